"""The synchronization core.

Whether a group synchronizes a map is decided on the pair automaton: a pair
of points is collapsible iff some word in the generators and the map sends
it to a repeated pair, and the semigroup contains a constant map iff every
pair is collapsible. The graph whose edges are the non-collapsible pairs is
the invariant graph of the semigroup; its clique number is the minimum rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._kernels import backend
from .errors import (
    BadParameter,
    DegreeMismatch,
    IsPermutation,
    NotPrimitive,
    NotRegular,
    NullGraph,
    OrbitBudgetExceeded,
    SizeMismatch,
)
from .graphs import Graph
from .perms import PermGroup
from .search import chromatic_number, clique_number, has_clique_through
from .transforms import Transformation


@dataclass
class PairClosure:
    """Collapsibility of every unordered pair under <G, f>."""

    degree: int
    collapsible: np.ndarray  # boolean matrix over ordered pairs

    @staticmethod
    def from_instance(group: PermGroup, f: Transformation) -> "PairClosure":
        if group.degree != f.degree:
            raise DegreeMismatch(f"group degree {group.degree}, map degree {f.degree}")
        n = group.degree
        maps = [g.images for g in group.generators] + [f.images]
        flat = np.concatenate(maps).astype(np.int32)
        marked = backend().pair_closure(n, flat, len(maps))
        mat = np.asarray(marked, dtype=bool).reshape(n, n)
        assert np.array_equal(mat, mat.T)
        return PairClosure(n, mat)

    def all_collapsible(self) -> bool:
        return bool(self.collapsible.all())

    def collapsible_pairs(self) -> set[tuple[int, int]]:
        iu, iv = np.nonzero(np.triu(self.collapsible, 1))
        return set(zip(iu.tolist(), iv.tolist()))


def synchronizes(group: PermGroup, f: Transformation) -> bool:
    """True iff the semigroup generated by the group and f has a constant map."""
    if group.degree != f.degree:
        raise DegreeMismatch(f"group degree {group.degree}, map degree {f.degree}")
    if f.is_permutation():
        raise IsPermutation("f must not be a permutation")
    return PairClosure.from_instance(group, f).all_collapsible()


def graph_of(group: PermGroup, f: Transformation) -> Graph:
    """Invariant graph of <G, f>: v ~ w iff no element collapses v and w."""
    pc = PairClosure.from_instance(group, f)
    d = ~pc.collapsible
    np.fill_diagonal(d, False)
    return Graph.from_dense(d)


def graph_of_set(degree: int, maps) -> Graph:
    """Invariant graph of an explicitly listed set of transformations."""
    d = np.ones((degree, degree), dtype=bool)
    np.fill_diagonal(d, False)
    for f in maps:
        img = f.images if isinstance(f, Transformation) else np.asarray(f)
        same = img[:, None] == img[None, :]
        d &= ~same
    return Graph.from_dense(d)


def derived_graph(g: Graph) -> Graph:
    """Keep exactly the edges lying in at least one maximum clique."""
    if g.is_null():
        raise NullGraph("derived graph of a null graph is undefined")
    omega, _ = clique_number(g)
    keep = []
    for u, v in g.edges():
        if has_clique_through(g, u, v, omega):
            keep.append((u, v))
    out = Graph.from_edges(g.n, keep)
    return out


def min_rank(group: PermGroup, f: Transformation) -> int:
    """Minimum rank over <G, f>, via the clique number of the invariant graph.

    The chromatic number is recomputed as a cross-check; a mismatch would
    mean the invariant-graph machinery is broken, so it is a hard assert.
    """
    g = graph_of(group, f)
    if g.is_null():
        return 1
    omega, _ = clique_number(g)
    chi, _ = chromatic_number(g)
    if omega != chi:
        raise AssertionError(
            f"invariant graph has omega={omega} != chi={chi}; this cannot happen"
        )
    return omega


def neighbourhood_bound_check(g: Graph) -> bool:
    """For regular g: every two distinct vertices share at most k-2 neighbours."""
    if not g.is_regular():
        raise NotRegular("the neighbourhood bound applies to regular graphs")
    k = g.valency()
    a = g.dense.astype(np.int64)
    common = a @ a
    np.fill_diagonal(common, 0)
    return bool(common.max(initial=0) <= k - 2)


def is_g_section(
    group: PermGroup, section, partition, orbit_budget: int = 10**6
) -> bool:
    """True iff every G-image of the set meets every part exactly once.

    Closes the set-orbit of the section under the generators, testing each
    member; raises OrbitBudgetExceeded past the budget.
    """
    parts = [frozenset(p) for p in partition]
    n = group.degree
    covered = set()
    for p in parts:
        if covered & p:
            raise BadParameter("partition parts overlap")
        covered |= p
    if covered != set(range(n)):
        raise BadParameter("partition does not cover the point set")
    a = frozenset(int(x) for x in section)
    if len(a) != len(parts):
        raise SizeMismatch(f"section of size {len(a)} vs {len(parts)} parts")

    def transversal(s):
        return all(len(s & p) == 1 for p in parts)

    seen = {a}
    stack = [a]
    while stack:
        cur = stack.pop()
        if not transversal(cur):
            return False
        for g in group.generators:
            img = frozenset(int(g.images[x]) for x in cur)
            if img not in seen:
                if len(seen) >= orbit_budget:
                    raise OrbitBudgetExceeded(f"set orbit exceeded {orbit_budget}")
                seen.add(img)
                stack.append(img)
    return True


@lru_cache(maxsize=None)
def _surjection_counts(n: int, r: int) -> list[list[int]]:
    """W[m][j]: maps of m remaining points into r values hitting all r-j unused."""
    w = [[0] * (r + 1) for _ in range(n + 1)]
    w[0][r] = 1
    for m in range(1, n + 1):
        for j in range(r + 1):
            total = j * w[m - 1][j]
            if j < r:
                total += (r - j) * w[m - 1][j + 1]
            w[m][j] = total
    return w


def random_map_of_rank(n: int, rank: int, rnd: random.Random) -> Transformation:
    """Uniform map of the given rank: random image set, uniform surjection.

    The surjection is sampled exactly (not by rejection) by weighting each
    choice with the number of completions, so mid-range ranks stay cheap.
    """
    if not 1 <= rank <= n:
        raise BadParameter(f"rank must be in 1..{n}")
    image = rnd.sample(range(n), rank)
    w = _surjection_counts(n, rank)
    images = []
    used: list[int] = []
    unused = list(range(rank))
    j = 0
    for pos in range(n):
        m = n - pos - 1
        w_used = j * w[m][j]
        w_new = (rank - j) * w[m][j + 1] if j < rank else 0
        if rnd.randrange(w_used + w_new) < w_used:
            v = used[rnd.randrange(j)]
        else:
            v = unused.pop(rnd.randrange(rank - j))
            used.append(v)
            j += 1
        images.append(image[v])
    out = Transformation(images)
    assert out.rank == rank
    return out


def synchronization_rank_scan(
    group: PermGroup, samples: int, ranks, seed: int = 0
) -> dict:
    """Sample random maps of each requested rank and test synchronization.

    Property-testing harness for the high-rank synchronization theorems.
    Reports per-rank sample outcomes; the group must be primitive.
    """
    if not group.is_primitive():
        raise NotPrimitive("rank scan is specified for primitive groups")
    n = group.degree
    for r in ranks:
        if not 2 <= r <= n - 1:
            raise BadParameter(f"rank {r} outside 2..{n - 1}")
    rnd = random.Random(seed)
    report = {"degree": n, "seed": seed, "samples": samples, "ranks": {}}
    for r in sorted(ranks):
        outcomes = []
        for _ in range(samples):
            f = random_map_of_rank(n, r, rnd)
            outcomes.append(bool(synchronizes(group, f)))
        report["ranks"][r] = {
            "synchronized": sum(outcomes),
            "failed": samples - sum(outcomes),
            "all_synchronized": all(outcomes),
        }
    return report


def instance_report(group: PermGroup, f: Transformation) -> dict:
    """The JSON-facing summary for one (G, f) instance."""
    from .transforms import kernel_type

    sync = synchronizes(group, f)
    g = graph_of(group, f)
    if g.is_null():
        omega, chi = 1, 1
        valency = 0
    else:
        omega, _ = clique_number(g)
        chi, _ = chromatic_number(g)
        valency = int(g.degrees.max())
    return {
        "degree": group.degree,
        "rank": f.rank,
        "kernel_type": list(kernel_type(f)),
        "synchronizes": sync,
        "min_rank": 1 if sync else omega,
        "graph_stats": {
            "valency": valency,
            "edges": g.edge_count(),
            "omega": omega,
            "chi": chi,
        },
    }
