"""Latin squares, r-orthogonality, and the graph constructions they drive.

Superposing two Latin squares of order k gives a homomorphism from the
rook's graph K_k box K_k to its complement whose rank is the number of
distinct superposed pairs; exhausting small orders reproduces the known
r-orthogonality spectrum. Composing through a colouring lifts any such
homomorphism to an endomorphism of X box X, and a GF(2) Cayley family
supplies rank-6 endomorphisms of primitive graphs of every admissible
prime dimension.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import (
    BadParameter,
    BadPrime,
    ColouringInvalid,
    HomomorphismInvalid,
    OrderMismatch,
    TooLarge,
)
from .graphs import Graph, box_product, cayley_gf2, complement, triangular_graph, duads
from .perms import Permutation, PermGroup
from .search import Homomorphism, is_endomorphism
from .transforms import Transformation


class LatinSquare:
    __slots__ = ("k", "cells")

    def __init__(self, cells):
        arr = np.asarray(cells, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise BadParameter("cells must form a square array")
        k = arr.shape[0]
        want = np.arange(k)
        for i in range(k):
            if not np.array_equal(np.sort(arr[i]), want):
                raise BadParameter(f"row {i} is not a permutation of 0..{k - 1}")
            if not np.array_equal(np.sort(arr[:, i]), want):
                raise BadParameter(f"column {i} is not a permutation of 0..{k - 1}")
        arr.setflags(write=False)
        self.k = k
        self.cells = arr

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and np.array_equal(self.cells, other.cells)

    def __hash__(self):
        return hash(self.cells.tobytes())

    def __repr__(self):
        return f"LatinSquare({self.cells.tolist()})"

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.cells) + "\n"

    @staticmethod
    def from_text(text: str) -> "LatinSquare":
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([int(tok) for tok in line.split()])
        return LatinSquare(rows)

    @staticmethod
    def cyclic(k: int) -> "LatinSquare":
        return LatinSquare([[(i + j) % k for j in range(k)] for i in range(k)])


def r_orthogonality(l1: LatinSquare, l2: LatinSquare) -> int:
    """Number of distinct ordered pairs in the superposition of the squares."""
    if l1.k != l2.k:
        raise OrderMismatch(f"orders {l1.k} and {l2.k}")
    pairs = l1.cells * l1.k + l2.cells
    return int(np.unique(pairs).size)


@lru_cache(maxsize=8)
def all_latin_squares(k: int) -> tuple[LatinSquare, ...]:
    """All Latin squares of order k in lexicographic row order (k <= 4)."""
    if k > 4:
        raise TooLarge("exhaustive Latin square listing is limited to k <= 4")
    perms = list(permutations(range(k)))
    out = []

    def extend(rows):
        if len(rows) == k:
            out.append(LatinSquare(list(rows)))
            return
        for p in perms:
            if all(all(r[j] != p[j] for j in range(k)) for r in rows):
                extend(rows + (p,))

    extend(())
    return tuple(out)


def r_orthogonal_spectrum(k: int, samples: int = 2000, seed: int = 0) -> set[int]:
    """Achievable r-orthogonality values for order k.

    Exhaustive over all ordered pairs of squares for k <= 4; for larger k a
    seeded random sample, so the result is a subset of the true spectrum.
    """
    if k < 2:
        raise BadParameter("order must be at least 2")
    if k <= 4:
        squares = all_latin_squares(k)
        cells = np.stack([s.cells for s in squares]).reshape(len(squares), k * k)
        found: set[int] = set()
        for a in range(len(squares)):
            keys = cells[a] * k + cells  # superpose a against every square
            masks = np.zeros(len(squares), dtype=np.uint64)
            for c in range(k * k):
                masks |= np.uint64(1) << keys[:, c].astype(np.uint64)
            found.update(int(x) for x in np.unique(np.bitwise_count(masks)))
        return found
    rnd = random.Random(seed)
    found = set()
    for _ in range(samples):
        a = _random_square(k, rnd)
        b = _random_square(k, rnd)
        found.add(r_orthogonality(a, b))
    found.add(k)  # a square against itself
    return found


def _random_square(k: int, rnd: random.Random) -> LatinSquare:
    while True:
        rows = []
        dead = False
        for _ in range(k):
            cols = [set(range(k)) - {r[j] for r in rows} for j in range(k)]
            row = _random_sdr(cols, rnd)
            if row is None:
                dead = True
                break
            rows.append(row)
        if not dead:
            return LatinSquare(rows)


def _random_sdr(cols, rnd):
    k = len(cols)
    row = [-1] * k
    order = sorted(range(k), key=lambda j: len(cols[j]))
    used = set()

    def go(i):
        if i == k:
            return True
        j = order[i]
        choices = list(cols[j] - used)
        rnd.shuffle(choices)
        for v in choices:
            row[j] = v
            used.add(v)
            if go(i + 1):
                return True
            used.discard(v)
        row[j] = -1
        return False

    return row if go(0) else None


def superposition_hom(l1: LatinSquare, l2: LatinSquare) -> Homomorphism:
    """The map (i, j) -> (L1[i,j], L2[i,j]) from K_k box K_k to its complement."""
    if l1.k != l2.k:
        raise OrderMismatch(f"orders {l1.k} and {l2.k}")
    k = l1.k
    if k < 2:
        raise BadParameter("order must be at least 2")
    rook = box_product(Graph.complete(k), Graph.complete(k))
    target = complement(rook)
    images = (l1.cells * k + l2.cells).reshape(-1)
    hom = Homomorphism(rook, target, images.astype(np.int32))
    if not hom.is_valid():
        raise HomomorphismInvalid("superposition of these squares is not edge-preserving")
    assert hom.rank == r_orthogonality(l1, l2)
    return hom


def triangular_hom(m: int) -> Homomorphism:
    """K_{m-1} box K_{m-1} -> T(m): (a, b) -> {a+1, b+1}, (a, a) -> {0, a+1}."""
    if m < 4:
        raise BadParameter("triangular homomorphisms need m >= 4")
    k = m - 1
    src = box_product(Graph.complete(k), Graph.complete(k))
    dst = triangular_graph(m)
    index = {pair: i for i, pair in enumerate(duads(m))}
    images = np.empty(k * k, dtype=np.int32)
    for a in range(k):
        for b in range(k):
            pair = (0, a + 1) if a == b else (min(a, b) + 1, max(a, b) + 1)
            images[a * k + b] = index[pair]
    hom = Homomorphism(src, dst, images)
    if not hom.is_valid():
        raise HomomorphismInvalid("triangular map failed validation")
    expected = tuple(sorted([1] * (m - 1) + [2] * ((m - 1) * (m - 2) // 2), reverse=True))
    assert hom.kernel_type() == expected
    return hom


def box_power_endomorphism(x: Graph, colouring, hom: Homomorphism) -> Transformation:
    """Endomorphism of X box X built from a colouring and a hom K_k box K_k -> X.

    Quotient X box X onto K_k box K_k by colour-class pairs, apply the
    homomorphism, then embed X back along the slice v -> (v, v0) with
    v0 = vertex 0 (equal second coordinates turn adjacency in X into
    adjacency in the product, so the slice embedding is always valid).
    The result is validated before being returned.
    """
    classes = [sorted(int(v) for v in cls) for cls in colouring]
    k = len(classes)
    seen = sorted(v for cls in classes for v in cls)
    if seen != list(range(x.n)):
        raise ColouringInvalid("colour classes must partition the vertex set")
    colour = np.empty(x.n, dtype=np.int64)
    for c, cls in enumerate(classes):
        for v in cls:
            colour[v] = c
    d = x.dense
    for u, v in x.edges():
        if colour[u] == colour[v]:
            raise ColouringInvalid(f"class {colour[u]} contains the edge ({u}, {v})")
    rook = box_product(Graph.complete(k), Graph.complete(k))
    if hom.source != rook or hom.target != x:
        raise HomomorphismInvalid("hom must map K_k box K_k to X for this colouring")
    if not hom.is_valid():
        raise HomomorphismInvalid("hom failed validation")

    n = x.n
    u = np.arange(n * n) // n
    v = np.arange(n * n) % n
    cells = colour[u] * k + colour[v]
    images = hom.images[cells].astype(np.int64) * n + 0  # embed along (w, 0)
    out = Transformation(images)
    xbox = box_product(x, x)
    if not is_endomorphism(xbox, out):
        raise HomomorphismInvalid("composite map failed endomorphism validation")
    assert out.rank == hom.rank
    return out


# -- the GF(2) Cayley family -------------------------------------------------


def _order_mod(a: int, p: int) -> int:
    x = a % p
    o = 1
    while x != 1:
        x = (x * a) % p
        o += 1
    return o


def cayley_family(p: int) -> tuple[Graph, PermGroup, Transformation]:
    """The rank-6 witness family on GF(2)^(p-1), for primes p with 2 primitive.

    Basis e_0..e_{p-2} with e_{p-1} the all-ones vector (the basis sums to
    zero); connection set {e_i, e_i + e_{i+1} : i mod p} of size 2p. Returns
    the Cayley graph, the translation-plus-dihedral group V : D_2p, and a
    rank-6 endomorphism collapsing the eight cosets of the subspace spanned
    by the e_i + e_{i+2} (two coset unions merged), with kernel type
    (2^{p-3}, 2^{p-3}, 2^{p-4}, 2^{p-4}, 2^{p-4}, 2^{p-4}).
    """
    if p <= 5:
        raise BadParameter("the family needs a prime p > 5")
    if any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise BadParameter(f"{p} is not prime")
    if _order_mod(2, p) != p - 1:
        raise BadPrime(f"2 is not a primitive root mod {p}")
    dim = p - 1
    if dim > 14:
        raise TooLarge("cayley_family capped at p - 1 <= 14")

    e = [1 << i for i in range(dim)] + [(1 << dim) - 1]  # e[p-1] = sum of basis
    conn = set()
    for i in range(p):
        conn.add(e[i])
        conn.add(e[i] ^ e[(i + 1) % p])
    assert len(conn) == 2 * p and 0 not in conn
    graph = cayley_gf2(dim, sorted(conn))
    assert graph.is_regular() and graph.valency() == 2 * p

    # linear maps sigma: e_i -> e_{i+1} and tau: e_i -> e_{-i}, on coordinates
    sigma_cols = [e[(i + 1) % p] for i in range(dim)]
    tau_cols = [e[(p - i) % p] for i in range(dim)]

    def apply_linear(cols):
        verts = np.arange(1 << dim, dtype=np.int64)
        img = np.zeros(1 << dim, dtype=np.int64)
        for i, col in enumerate(cols):
            img ^= ((verts >> i) & 1) * col
        return img

    translate = np.arange(1 << dim, dtype=np.int64) ^ e[0]
    sigma = apply_linear(sigma_cols)
    tau = apply_linear(tau_cols)
    group = PermGroup([Permutation(translate), Permutation(sigma), Permutation(tau)])
    dmat = graph.dense
    for g in group.generators:
        img = g.images
        assert np.array_equal(dmat[np.ix_(img, img)], dmat), "generator not an automorphism"

    # subspace spanned by e_i + e_{i+2}, i = 0..p-5: codimension 3
    span_gens = [e[i] ^ e[i + 2] for i in range(p - 4)]
    subspace = {0}
    for g in span_gens:
        subspace |= {x ^ g for x in subspace}
    assert len(subspace) == 1 << (p - 4), "spanning vectors not independent"
    assert not (subspace & conn), "subspace must contain no edge"

    reps = [
        0,
        e[0],
        e[1],
        e[0] ^ e[1],
        e[p - 2],
        e[p - 2] ^ e[0],
        e[p - 2] ^ e[1],
        e[p - 2] ^ e[0] ^ e[1],
    ]
    cosets = [frozenset(r ^ x for x in subspace) for r in reps]
    assert len(frozenset().union(*cosets)) == 1 << dim

    # merge (X+e1, X+e[p-2]) and (X+e0+e1, X+e0+e[p-2]) into the two big classes
    klass = [
        cosets[0],
        cosets[1],
        cosets[2] | cosets[4],
        cosets[3] | cosets[5],
        cosets[6],
        cosets[7],
    ]
    image_set = [0, e[0], e[1], e[0] ^ e[1], e[p - 1], e[0] ^ e[p - 1]]

    # adjacency between classes, and between designated image vertices
    def classes_adjacent(a, b):
        return any((x ^ y) in conn for x in klass[a] for y in klass[b])

    qadj = [[classes_adjacent(a, b) for b in range(6)] for a in range(6)]
    iadj = [
        [bool(graph.has_edge(image_set[a], image_set[b])) if a != b else False for b in range(6)]
        for a in range(6)
    ]
    assignment = None
    for perm in permutations(range(6)):
        if all(
            (not qadj[a][b]) or iadj[perm[a]][perm[b]]
            for a in range(6)
            for b in range(a + 1, 6)
        ):
            assignment = perm
            break
    if assignment is None:
        raise HomomorphismInvalid("no valid collapse onto the embedded butterfly")

    images = np.empty(1 << dim, dtype=np.int64)
    for c, cls in enumerate(klass):
        tgt = image_set[assignment[c]]
        for x in cls:
            images[x] = tgt
    endo = Transformation(images)
    assert is_endomorphism(graph, endo)
    assert endo.rank == 6
    return graph, group, endo


# -- fixtures: three order-4 square pairs with non-uniform superpositions ----


def witness_square_pairs() -> list[tuple[LatinSquare, LatinSquare]]:
    """Fixture order-4 pairs giving non-uniform homomorphisms of ranks 6, 9, 12."""
    pair_a = (
        LatinSquare([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]),
        LatinSquare([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]]),
    )
    pair_b = (
        LatinSquare([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]]),
        LatinSquare([[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]),
    )
    pair_c = (
        LatinSquare([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]),
        LatinSquare([[0, 1, 2, 3], [1, 2, 3, 0], [3, 0, 1, 2], [2, 3, 0, 1]]),
    )
    return [pair_a, pair_b, pair_c]
