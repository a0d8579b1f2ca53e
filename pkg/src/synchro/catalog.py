"""Deterministic constructions of the named groups and graphs.

Everything here is built from scratch (no external group or graph
databases) with a frozen vertex numbering, and every certified property is
recomputed at construction time, so a catalog object that builds at all is
known-good. Constructions are cached per process.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import SynchroError
from .graphs import (
    Graph,
    box_product,
    complement,
    line_graph,
    tensor_product,
    triangular_graph,
)
from .perms import Permutation, PermGroup
from .search import automorphism_count, chromatic_number, clique_number, find_isomorphism
from .transforms import Transformation


class CatalogError(SynchroError):
    pass


def _check(cond, msg):
    if not cond:
        raise CatalogError(f"catalog certification failed: {msg}")


# -- GF(9) = GF(3)[i], i^2 = -1; element a + 3b encodes a + b*i --------------


def _gf9_add(x, y):
    return (x % 3 + y % 3) % 3 + 3 * ((x // 3 + y // 3) % 3)


def _gf9_mul(x, y):
    a, b = x % 3, x // 3
    c, d = y % 3, y // 3
    return (a * c - b * d) % 3 + 3 * ((a * d + b * c) % 3)


def _gf9_inv(x):
    for y in range(1, 9):
        if _gf9_mul(x, y) == 1:
            return y
    raise CatalogError("zero has no inverse")


def _gf9_frob(x):
    # cube map: a + b*i -> a - b*i
    return x % 3 + 3 * ((-(x // 3)) % 3)


_INF = 9  # the projective point at infinity


def _projective_maps():
    """Generators of PGammaL(2,9) on the 10-point projective line."""
    lam = 4  # 1 + i, a generator of GF(9)*
    o = lam
    order = 1
    while o != 1:
        o = _gf9_mul(o, lam)
        order += 1
    _check(order == 8, "1+i must generate the multiplicative group")

    def mk(fn, fixes_inf=True, inf_to=None, zero_to=None):
        images = []
        for x in range(10):
            if x == _INF:
                images.append(_INF if fixes_inf else inf_to)
            elif x == 0 and zero_to is not None:
                images.append(zero_to)
            else:
                images.append(fn(x))
        return Permutation(images)

    shift = mk(lambda x: _gf9_add(x, 1))
    scale = mk(lambda x: _gf9_mul(lam, x))
    inv = mk(lambda x: _gf9_inv(x), fixes_inf=False, inf_to=0, zero_to=_INF)
    frob = mk(_gf9_frob)
    return [shift, scale, inv, frob]


def _pair_index(n):
    pairs = list(combinations(range(n), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    return pairs, idx


def _lift_to_pairs(perm: Permutation, pairs, idx) -> Permutation:
    images = []
    for a, b in pairs:
        u, v = perm(a), perm(b)
        images.append(idx[(min(u, v), max(u, v))])
    return Permutation(images)


@lru_cache(maxsize=None)
def pgammal_2_9_deg45() -> PermGroup:
    """PGammaL(2,9) acting on the 45 unordered pairs of projective points.

    Certified transitive and primitive with a suborbit of length 4.
    """
    pairs, idx = _pair_index(10)
    gens = [_lift_to_pairs(g, pairs, idx) for g in _projective_maps()]
    group = PermGroup(gens)
    _check(group.degree == 45, "degree 45")
    _check(group.is_transitive(), "transitive on pairs")
    _check(group.is_primitive(), "primitive on pairs")
    _check(4 in group.suborbit_lengths(), "suborbit of length 4")
    return group


@lru_cache(maxsize=None)
def pgammal_orbital_graph() -> Graph:
    """The 4-valent orbital graph of the degree-45 action (pair numbering)."""
    group = pgammal_2_9_deg45()
    g = None
    for x in range(1, 45):
        cand = group.orbital_graph((0, x))
        if cand.is_regular() and cand.valency() == 4:
            g = cand
            break
    _check(g is not None, "a 4-valent orbital graph exists")
    _certify_line_graph_shape(g)
    return g


def _certify_line_graph_shape(g: Graph):
    from .graphs import induced_subgraph

    _check(g.n == 45 and g.is_regular() and g.valency() == 4, "45 vertices, 4-regular")
    # closed neighbourhoods induce the butterfly: 5 vertices, 6 edges,
    # degree multiset (4,2,2,2,2); that forces two triangles on one vertex
    for v in range(g.n):
        sub, _ = induced_subgraph(g, g.closed_neighbourhood(v))
        _check(sub.n == 5 and sub.edge_count() == 6, f"butterfly at {v}")
        _check(sorted(sub.degrees.tolist()) == [2, 2, 2, 2, 4], f"butterfly degrees at {v}")


@lru_cache(maxsize=None)
def tutte_coxeter() -> Graph:
    """Incidence graph of the 15 duads and 15 synthemes of a 6-set.

    Vertices 0..14 are the duads in lexicographic order, 15..29 the
    synthemes (perfect matchings) sorted lexicographically. Certified
    cubic of girth 8 with automorphism group of order 1440.
    """
    duad_list, duad_idx = _pair_index(6)
    synthemes = []

    def build(remaining, acc):
        if not remaining:
            synthemes.append(tuple(sorted(acc)))
            return
        a = remaining[0]
        for b in remaining[1:]:
            build([x for x in remaining if x not in (a, b)], acc + [(a, b)])

    build(list(range(6)), [])
    synthemes.sort()
    _check(len(synthemes) == 15, "15 synthemes")
    edges = []
    for j, syn in enumerate(synthemes):
        for d in syn:
            edges.append((duad_idx[d], 15 + j))
    g = Graph.from_edges(30, edges)
    _check(g.is_regular() and g.valency() == 3, "cubic")
    _check(g.girth() == 8, "girth 8")
    _check(automorphism_count(g) == 1440, "|Aut| = 1440")
    return g


@lru_cache(maxsize=None)
def tutte_coxeter_line_graph() -> Graph:
    """Line graph of the Tutte-Coxeter graph; 45 vertices, valency 4."""
    g, _ = line_graph(tutte_coxeter())
    _certify_line_graph_shape(g)
    omega, _ = clique_number(g)
    chi, _ = chromatic_number(g)
    _check(omega == 3 and chi == 3, "omega = chi = 3")
    # each edge lies in exactly one triangle
    a = g.dense.astype(np.int64)
    tri = a @ a
    iu, iv = np.nonzero(np.triu(g.dense, 1))
    _check((tri[iu, iv] == 1).all(), "every edge in a unique triangle")
    return g


@lru_cache(maxsize=None)
def canonical_pair_matching() -> np.ndarray:
    """Vertex bijection from the pair-numbered orbital graph onto the line graph.

    Found once by deterministic backtracking isomorphism search and reused
    to move the catalog group onto the line-graph numbering.
    """
    iso = find_isomorphism(pgammal_orbital_graph(), tutte_coxeter_line_graph())
    _check(iso is not None, "orbital graph isomorphic to the line graph")
    return iso


@lru_cache(maxsize=None)
def pgammal_2_9_on_line_graph() -> PermGroup:
    """The degree-45 group renumbered to act on the line graph's vertices."""
    group = pgammal_2_9_deg45()
    sigma = canonical_pair_matching()
    inv = np.empty(45, dtype=np.int64)
    inv[sigma] = np.arange(45)
    gens = []
    for g in group.generators:
        images = np.empty(45, dtype=np.int64)
        images[sigma] = sigma[g.images]
        gens.append(Permutation(images))
    out = PermGroup(gens)
    lg = tutte_coxeter_line_graph().dense
    for g in out.generators:
        img = g.images
        _check(
            np.array_equal(lg[np.ix_(img, img)], lg),
            "group generators are line-graph automorphisms",
        )
    return out


# -- small primitive groups for the rank scans -------------------------------


def _coord_perm(k, ndim, axis, base: Permutation) -> Permutation:
    """Apply a permutation of 0..k-1 to one coordinate of {0..k-1}^ndim."""
    n = k**ndim
    images = np.empty(n, dtype=np.int64)
    for v in range(n):
        digits = []
        x = v
        for _ in range(ndim):
            digits.append(x % k)
            x //= k
        digits.reverse()  # most significant first
        digits[axis] = base(digits[axis])
        y = 0
        for d in digits:
            y = y * k + d
        images[v] = y
    return Permutation(images)


def _axis_perm(k, ndim, axis_map) -> Permutation:
    n = k**ndim
    images = np.empty(n, dtype=np.int64)
    for v in range(n):
        digits = []
        x = v
        for _ in range(ndim):
            digits.append(x % k)
            x //= k
        digits.reverse()
        moved = [digits[axis_map[i]] for i in range(ndim)]
        y = 0
        for d in moved:
            y = y * k + d
        images[v] = y
    return Permutation(images)


@lru_cache(maxsize=None)
def rook_group(k: int) -> PermGroup:
    """S_k wr 2 in product action on the k x k grid (primitive for k >= 3)."""
    swap = Permutation.from_cycles([(0, 1)], k)
    cyc = Permutation.from_cycles([tuple(range(k))], k)
    gens = [
        _coord_perm(k, 2, 0, swap),
        _coord_perm(k, 2, 0, cyc),
        _axis_perm(k, 2, [1, 0]),
    ]
    group = PermGroup(gens)
    _check(group.is_primitive(), f"rook group of order {k} primitive")
    return group


@lru_cache(maxsize=None)
def box_power_group_27() -> PermGroup:
    """S_3 wr S_3 in product action on 27 points."""
    swap = Permutation.from_cycles([(0, 1)], 3)
    cyc = Permutation.from_cycles([(0, 1, 2)], 3)
    gens = [
        _coord_perm(3, 3, 0, swap),
        _coord_perm(3, 3, 0, cyc),
        _axis_perm(3, 3, [1, 2, 0]),
        _axis_perm(3, 3, [1, 0, 2]),
    ]
    group = PermGroup(gens)
    _check(group.is_primitive(), "S3 wr S3 primitive on 27")
    return group


@lru_cache(maxsize=None)
def triangular_group(m: int) -> PermGroup:
    """S_m acting on unordered pairs (primitive for m >= 5)."""
    pairs, idx = _pair_index(m)
    swap = Permutation.from_cycles([(0, 1)], m)
    cyc = Permutation.from_cycles([tuple(range(m))], m)
    group = PermGroup([_lift_to_pairs(g, pairs, idx) for g in (swap, cyc)])
    _check(group.is_primitive(), f"S_{m} on pairs primitive")
    return group


# -- graph corpus -------------------------------------------------------------


@lru_cache(maxsize=None)
def petersen() -> Graph:
    """Kneser graph K(5,2): pairs from a 5-set, adjacent iff disjoint."""
    return complement(triangular_graph(5))


@lru_cache(maxsize=None)
def small_primitive_graph_corpus() -> list[tuple[str, Graph, tuple[int, int, int]]]:
    """The small vertex-primitive graphs with omega = chi, with their known
    (order, valency, chromatic number) values re-certified at build time."""
    k3 = Graph.complete(3)
    k4 = Graph.complete(4)
    entries = [
        ("k3_box_k3", box_product(k3, k3), (9, 4, 3)),
        ("k4_box_k4", box_product(k4, k4), (16, 6, 4)),
        ("k3_box_k3_box_k3", box_product(box_product(k3, k3), k3), (27, 6, 3)),
        ("k3_tensor_k3_tensor_k3", tensor_product(tensor_product(k3, k3), k3), (27, 8, 3)),
        ("triangular_8", triangular_graph(8), (28, 12, 7)),
    ]
    for name, g, (n, k, chi) in entries:
        _check(g.n == n, f"{name}: order {n}")
        _check(g.is_regular() and g.valency() == k, f"{name}: valency {k}")
        got_chi, _ = chromatic_number(g)
        _check(got_chi == chi, f"{name}: chi {chi}")
        omega, _ = clique_number(g)
        _check(omega == chi, f"{name}: omega = chi")
    return entries


# -- registry ------------------------------------------------------------------


def _corpus_graph(name):
    def build():
        for nm, g, _ in small_primitive_graph_corpus():
            if nm == name:
                return g
        raise CatalogError(name)

    return build


GRAPHS = {
    "tutte_coxeter": tutte_coxeter,
    "tutte_coxeter_line_graph": tutte_coxeter_line_graph,
    "pgammal_orbital_graph": pgammal_orbital_graph,
    "k3_box_k3": _corpus_graph("k3_box_k3"),
    "k4_box_k4": _corpus_graph("k4_box_k4"),
    "k3_box_k3_box_k3": _corpus_graph("k3_box_k3_box_k3"),
    "k3_tensor_k3_tensor_k3": _corpus_graph("k3_tensor_k3_tensor_k3"),
    "triangular_8": _corpus_graph("triangular_8"),
    "triangular_6": lambda: triangular_graph(6),
    "petersen": petersen,
    "c5": lambda: Graph.cycle(5),
}

GROUPS = {
    "pgammal_2_9_deg45": pgammal_2_9_deg45,
    "pgammal_2_9_line45": pgammal_2_9_on_line_graph,
    "rook_group_3": lambda: rook_group(3),
    "rook_group_4": lambda: rook_group(4),
    "box_power_group_27": box_power_group_27,
    "triangular_group_8": lambda: triangular_group(8),
}


def primitive_scan_groups() -> list[tuple[str, PermGroup]]:
    """The catalog's primitive groups of degree 9..28, for the rank scans."""
    return [
        ("rook_group_3", rook_group(3)),
        ("rook_group_4", rook_group(4)),
        ("box_power_group_27", box_power_group_27()),
        ("triangular_group_8", triangular_group(8)),
    ]


def list_names() -> dict:
    return {"graphs": sorted(GRAPHS), "groups": sorted(GROUPS)}


def build(name: str):
    if name in GRAPHS:
        return GRAPHS[name]()
    if name in GROUPS:
        return GROUPS[name]()
    raise CatalogError(f"unknown catalog entry {name!r}")


def verify(name: str | None = None) -> dict:
    """Re-run the certifications; raises CatalogError on any failure."""
    names = [name] if name else sorted(GRAPHS) + sorted(GROUPS)
    out = {}
    for nm in names:
        obj = build(nm)
        if isinstance(obj, Graph):
            out[nm] = {"kind": "graph", "n": obj.n, "edges": obj.edge_count()}
        else:
            out[nm] = {
                "kind": "group",
                "degree": obj.degree,
                "generators": len(obj.generators),
            }
    # cross-consistency of the two degree-45 objects
    if name in (None, "pgammal_2_9_line45"):
        pgammal_2_9_on_line_graph()
    return out


# -- the degree-45 rank-7 witness in its original external numbering ----------

WITNESS45_TEXT = (
    "[ 1, 1, 1, 14, 9, 14, 28, 41, 41, 1, 43, 28, 28, 41, 9, 1, 1, 25, 25, 28, 28, "
    "25, 41, 28, 1, 1, 9, 43, 14, 9, 43, 28, 28, 25, 41, 43, 14, 28, 43, 25, 14, 1, 28, 1, 9 ]"
)


def degree45_witness_text() -> str:
    return WITNESS45_TEXT


def degree45_witness() -> Transformation:
    """The degree-45 rank-7 witness as an image list.

    Its vertex numbering comes from the system that first produced it and
    differs from this catalog's frozen numbering, so it is generally not an
    endomorphism of the catalog line graph; callers needing a witness in
    catalog numbering should take a rank-7 endomorphism from the census.
    """
    from .transforms import parse_transformation

    return parse_transformation(WITNESS45_TEXT)
