"""Independent brute-force oracles used by the tests.

Everything here recomputes results the slow, obviously-correct way:
explicit semigroup closure by repeated composition, full enumeration of all
n^n self-maps, backtracking isomorphism over raw vertex bijections, and
exhaustive partition listings. None of it shares code with the package's
search kernels.
"""

from __future__ import annotations

import numpy as np

from synchro.graphs import Graph
from synchro.perms import PermGroup, Permutation
from synchro.transforms import Transformation


def semigroup_closure(maps, cap: int = 150_000) -> np.ndarray | None:
    """Every element of the semigroup generated by the maps, as rows.

    Breadth-first closure under right-composition with the generators.
    Returns None as soon as the element count would exceed ``cap``.
    """
    gens = [np.asarray(m, dtype=np.int64) for m in maps]
    n = gens[0].size
    radix = n ** np.arange(n, dtype=np.int64)

    def keys(rows):
        return rows @ radix

    start = np.unique(np.stack(gens), axis=0)
    visited = set(int(k) for k in keys(start))
    all_rows = [start]
    frontier = start
    while frontier.size:
        batches = []
        for g in gens:
            comp = g[frontier]  # apply g after each frontier word
            ks = keys(comp)
            fresh = [i for i, k in enumerate(ks) if int(k) not in visited]
            if fresh:
                batch = comp[fresh]
                # dedupe within the batch
                batch = np.unique(batch, axis=0)
                bks = keys(batch)
                take = []
                for i, k in enumerate(bks):
                    ki = int(k)
                    if ki not in visited:
                        visited.add(ki)
                        take.append(i)
                if take:
                    batches.append(batch[take])
        if len(visited) > cap:
            return None
        if not batches:
            break
        frontier = np.concatenate(batches)
        all_rows.append(frontier)
    return np.concatenate(all_rows)


def closure_ranks(rows: np.ndarray) -> np.ndarray:
    s = np.sort(rows, axis=1)
    return (np.diff(s, axis=1) != 0).sum(axis=1) + 1


def oracle_synchronizes(rows: np.ndarray) -> bool:
    return bool((closure_ranks(rows) == 1).any())


def oracle_min_rank(rows: np.ndarray) -> int:
    return int(closure_ranks(rows).min())


def oracle_collapsible_pairs(rows: np.ndarray, n: int) -> set[tuple[int, int]]:
    out = set()
    iu, iv = np.triu_indices(n, 1)
    hits = (rows[:, iu] == rows[:, iv]).any(axis=0)
    for a, b, h in zip(iu.tolist(), iv.tolist(), hits.tolist()):
        if h:
            out.add((a, b))
    return out


def random_instance(rng: np.random.Generator, cap: int = 150_000):
    """A seeded random (group, map, closure) triple of degree <= 8.

    Closures past the cap are redrawn at degree <= 6, where the whole
    transformation monoid fits, so the draw always terminates.
    """
    for attempt in range(64):
        hi = 9 if attempt == 0 else 7
        n = int(rng.integers(2, hi))
        ngens = 1 + int(rng.integers(0, 2))
        gens = [rng.permutation(n).astype(np.int64) for _ in range(ngens)]
        f = rng.integers(0, n, size=n).astype(np.int64)
        if np.unique(f).size == n:
            if n == 2:
                f = np.zeros(2, dtype=np.int64)
            else:
                f[0] = f[1]
        closure = semigroup_closure(gens + [f], cap=cap)
        if closure is not None:
            group = PermGroup([Permutation(g) for g in gens])
            return group, Transformation(f), closure
    raise RuntimeError("instance drawing failed to terminate")


def brute_endomorphisms(g: Graph, chunk: int = 1 << 18) -> np.ndarray:
    """All edge-preserving self-maps, by scanning every one of the n^n maps."""
    n = g.n
    d = g.dense
    edges = g.edges()
    total = n**n
    out = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        rows = np.empty((idx.size, n), dtype=np.int64)
        x = idx.copy()
        for pos in range(n - 1, -1, -1):
            rows[:, pos] = x % n
            x //= n
        ok = np.ones(idx.size, dtype=bool)
        for u, v in edges:
            ok &= d[rows[:, u], rows[:, v]]
        out.append(rows[ok])
    return np.concatenate(out)


def brute_isomorphic(a: Graph, b: Graph) -> bool:
    """Backtracking over raw vertex bijections (fine up to ~10 vertices)."""
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    if sorted(a.degrees.tolist()) != sorted(b.degrees.tolist()):
        return False
    n = a.n
    da, db = a.dense, b.dense
    dega, degb = a.degrees, b.degrees
    img = [-1] * n
    used = [False] * n

    def place(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or dega[v] != degb[w]:
                continue
            if all(da[v, u] == db[w, img[u]] for u in range(v)):
                img[v] = w
                used[w] = True
                if place(v + 1):
                    return True
                used[w] = False
        img[v] = -1
        return False

    return place(0)


def all_partitions(n: int):
    """Every partition of {0..n-1}, as tuples of sorted tuples."""
    if n == 0:
        yield ()
        return

    def go(x, parts):
        if x == n:
            yield tuple(tuple(p) for p in parts)
            return
        for i in range(len(parts)):
            parts[i].append(x)
            yield from go(x + 1, parts)
            parts[i].pop()
        parts.append([x])
        yield from go(x + 1, parts)
        parts.pop()

    yield from go(1, [[0]])


def invariant_partitions(group: PermGroup, a: int, b: int):
    """All G-invariant partitions with a and b in the same part."""
    n = group.degree
    out = []
    for part in all_partitions(n):
        lookup = {}
        for i, p in enumerate(part):
            for x in p:
                lookup[x] = i
        if lookup[a] != lookup[b]:
            continue
        good = True
        for g in group.generators:
            mapped = {tuple(sorted(int(g.images[x]) for x in p)) for p in part}
            if mapped != set(part):
                good = False
                break
        if good:
            out.append(part)
    return out


def finest_invariant_partition(group: PermGroup, a: int, b: int):
    """Meet of all invariant partitions joining a and b (brute force)."""
    n = group.degree
    related = np.ones((n, n), dtype=bool)
    for part in invariant_partitions(group, a, b):
        rel = np.zeros((n, n), dtype=bool)
        for p in part:
            for x in p:
                for y in p:
                    rel[x, y] = True
        related &= rel
    parts = []
    seen = set()
    for x in range(n):
        if x in seen:
            continue
        cls = tuple(sorted(np.flatnonzero(related[x]).tolist()))
        seen.update(cls)
        parts.append(cls)
    return sorted(parts, key=lambda p: p[0])
