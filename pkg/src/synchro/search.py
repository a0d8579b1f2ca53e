"""Exact clique number, chromatic number, and homomorphism enumeration.

All searches run on the bitset kernels from ``_kernels`` (numba-compiled by
default, pure fallback via SYNCHRO_BACKEND=pure). Determinism contract:
fixed options and a single worker give a fixed search order; counts and
histograms are identical for any worker count because parallel runs split
the root vertex's candidate values and merge by summation.
"""

from __future__ import annotations

import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._kernels import backend
from .errors import BadParameter, DegreeMismatch, TimeBudgetExceeded, TooLarge
from .graphs import Graph
from .transforms import Transformation

_POLL = 16384


@dataclass(frozen=True)
class SearchOptions:
    rank_filter: frozenset[int] | None = None
    proper_only: bool = False
    count_only: bool = False
    time_budget: float | None = None
    parallelism: int = 1

    def __post_init__(self):
        if self.time_budget is not None and self.time_budget <= 0:
            raise BadParameter("time_budget must be positive")
        if self.parallelism < 1:
            raise BadParameter("parallelism must be >= 1")


@dataclass
class Homomorphism:
    source: Graph
    target: Graph
    images: np.ndarray

    def __post_init__(self):
        self.images = np.asarray(self.images, dtype=np.int32)

    @property
    def rank(self) -> int:
        return int(np.unique(self.images).size)

    def kernel_type(self) -> tuple[int, ...]:
        _, counts = np.unique(self.images, return_counts=True)
        return tuple(sorted((int(c) for c in counts), reverse=True))

    def is_valid(self) -> bool:
        d = self.target.dense
        for u, v in self.source.edges():
            if not d[self.images[u], self.images[v]]:
                return False
        return True

    def as_transformation(self) -> Transformation:
        if self.source.n != self.target.n:
            raise DegreeMismatch("only endomorphisms convert to transformations")
        return Transformation(self.images)


@dataclass
class EndoCensus:
    """Result of an endomorphism / homomorphism enumeration."""

    total: int
    by_rank: dict[int, int]
    solutions: list[Homomorphism] = field(default_factory=list)
    partial: bool = False
    nodes: int = 0

    def histogram(self) -> dict[int, int]:
        return dict(sorted(self.by_rank.items()))


class _Deadline:
    """Shared abort flag raised by a timer thread after the budget expires."""

    def __init__(self, seconds):
        self.flag = np.zeros(1, dtype=np.int64)
        self._timer = None
        if seconds is not None:
            self._timer = threading.Timer(seconds, self._fire)
            self._timer.daemon = True
            self._timer.start()

    def _fire(self):
        self.flag[0] = 1

    def cancel(self):
        if self._timer is not None:
            self._timer.cancel()


def _rank_bits(ns, nd, opts: SearchOptions):
    """Accepted-rank bitmask plus cap/floor, or None when nothing qualifies."""
    max_rank = min(ns, nd)
    accepted = set(range(1, max_rank + 1))
    if opts.proper_only:
        accepted &= set(range(1, ns))
    if opts.rank_filter is not None:
        accepted &= {int(r) for r in opts.rank_filter}
    if not accepted:
        return None
    mask = np.uint64(0)
    for r in accepted:
        mask |= np.uint64(1) << np.uint64(r - 1)
    return mask, max(accepted), min(accepted)


def _split_roots(src: Graph, dst: Graph, preassigned=None):
    """Root subtasks: first branching vertex times each candidate value."""
    init = np.full(src.n, -1, dtype=np.int32)
    if preassigned:
        for v, a in preassigned.items():
            init[v] = a
    free = [v for v in range(src.n) if init[v] < 0]
    if not free:
        return [init]
    v0 = free[0]
    tasks = []
    for a in range(dst.n):
        t = init.copy()
        t[v0] = a
        tasks.append(t)
    return tasks


def _run_hom(
    src: Graph,
    dst: Graph,
    opts: SearchOptions,
    injective=False,
    stop_first=False,
    preassigned=None,
    collect=None,
):
    """Drive the kernel over root splits, merging counts deterministically."""
    if dst.n > 63:
        raise TooLarge("homomorphism search requires target graphs of <= 63 vertices")
    if dst.n == 0 or src.n == 0:
        raise BadParameter("empty graphs")
    kern = backend()
    indptr, indices = src.csr()
    dmask = dst.mask_rows()
    bits = _rank_bits(src.n, dst.n, opts)
    if bits is None:
        return EndoCensus(total=0, by_rank={})
    rank_mask, rank_cap, rank_floor = bits
    if collect is None:
        collect = not opts.count_only
    deadline = _Deadline(opts.time_budget)

    tasks = (
        _split_roots(src, dst, preassigned)
        if opts.parallelism > 1 and not stop_first
        else [_single_init(src, preassigned)]
    )

    def run_task(init):
        sol_cap = 0
        sol_out = np.empty(0, dtype=np.int8)
        counts = np.zeros(src.n + 2, dtype=np.int64)
        if collect:
            sol_cap = 1 << 14
            while True:
                sol_out = np.empty(sol_cap * src.n, dtype=np.int8)
                counts[:] = 0
                got, nodes, status = kern.hom_search(
                    src.n, indptr, indices, dst.n, dmask, init,
                    np.uint8(1 if injective else 0),
                    rank_mask, rank_cap, rank_floor,
                    np.uint8(1 if stop_first else 0),
                    sol_cap, sol_out, counts, deadline.flag, _POLL, 0,
                )
                if status != 2:
                    return got, nodes, status, sol_out, counts
                sol_cap *= 4
        got, nodes, status = kern.hom_search(
            src.n, indptr, indices, dst.n, dmask, init,
            np.uint8(1 if injective else 0),
            rank_mask, rank_cap, rank_floor,
            np.uint8(1 if stop_first else 0),
            sol_cap, sol_out, counts, deadline.flag, _POLL, 0,
        )
        return got, nodes, status, sol_out, counts

    try:
        if len(tasks) == 1 or opts.parallelism == 1:
            results = [run_task(t) for t in tasks]
        else:
            with ThreadPoolExecutor(max_workers=opts.parallelism) as pool:
                results = list(pool.map(run_task, tasks))
    finally:
        deadline.cancel()

    total_counts = np.zeros(src.n + 2, dtype=np.int64)
    sols = []
    nodes = 0
    aborted = False
    for got, nd, status, sol_out, counts in results:
        total_counts += counts
        nodes += int(nd)
        if status == 1:
            aborted = True
        if collect and got > 0:
            arr = sol_out[: got * src.n].reshape(got, src.n)
            for row in arr:
                sols.append(Homomorphism(src, dst, row.astype(np.int32)))
    by_rank = {r: int(c) for r, c in enumerate(total_counts) if c > 0}
    census = EndoCensus(
        total=int(total_counts.sum()),
        by_rank=by_rank,
        solutions=sols,
        partial=aborted,
        nodes=nodes,
    )
    return census


def _single_init(src: Graph, preassigned):
    init = np.full(src.n, -1, dtype=np.int32)
    if preassigned:
        for v, a in preassigned.items():
            init[v] = a
    return init


# -- public operations -------------------------------------------------------


def is_endomorphism(g: Graph, f: Transformation) -> bool:
    if f.degree != g.n:
        raise DegreeMismatch(f"graph on {g.n} vertices, map of degree {f.degree}")
    d = g.dense
    img = f.images
    iu, iv = np.nonzero(np.triu(d, 1))
    return bool(d[img[iu], img[iv]].all())


def is_homomorphism(src: Graph, dst: Graph, images) -> bool:
    img = np.asarray(images, dtype=np.int64)
    if img.size != src.n:
        raise DegreeMismatch("image list length differs from source order")
    if img.size and (img.min() < 0 or img.max() >= dst.n):
        return False
    d = dst.dense
    iu, iv = np.nonzero(np.triu(src.dense, 1))
    return bool(d[img[iu], img[iv]].all())


def clique_number(g: Graph, time_budget: float | None = None) -> tuple[int, list[int]]:
    """Exact maximum clique size plus one witness clique."""
    if g.n == 0:
        raise BadParameter("empty graph")
    if g.n > 63:
        raise TooLarge("clique search requires <= 63 vertices")
    kern = backend()
    nbr = g.mask_rows()
    full = (np.uint64(1) << np.uint64(g.n)) - np.uint64(1)
    deadline = _Deadline(time_budget)
    try:
        size, mask, nodes, status = kern.clique_search(
            g.n, nbr, np.uint64(0), full, 0, np.uint8(0), deadline.flag, _POLL, 0
        )
    finally:
        deadline.cancel()
    witness = _mask_to_list(mask)
    if status == 1:
        raise TimeBudgetExceeded(
            f"clique search aborted; best lower bound {size}",
            partial=(size, witness),
        )
    return int(size), witness


def _mask_to_list(mask) -> list[int]:
    out = []
    m = int(mask)
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def has_clique_through(g: Graph, u: int, v: int, size: int) -> bool:
    """Decide whether some clique of the given size contains edge (u, v)."""
    if not g.has_edge(u, v):
        return False
    kern = backend()
    nbr = g.mask_rows()
    r0 = (np.uint64(1) << np.uint64(u)) | (np.uint64(1) << np.uint64(v))
    p0 = nbr[u] & nbr[v]
    flag = np.zeros(1, dtype=np.int64)
    best, _, _, status = kern.clique_search(
        g.n, nbr, r0, p0, size, np.uint8(1), flag, _POLL, 0
    )
    return int(best) >= size


def is_k_colorable(
    g: Graph, k: int, clique_hint: list[int] | None = None,
    time_budget: float | None = None,
) -> tuple[bool, list[int] | None]:
    """Decide k-colorability; returns (answer, colouring or None).

    A maximum clique is pre-coloured with distinct colours, which is a valid
    symmetry break in existence mode.
    """
    if k >= g.n:
        return True, list(range(g.n))
    if g.is_null():
        return (k >= 1), [0] * g.n
    hint = clique_hint or []
    if len(hint) > k:
        return False, None
    pre = {v: i for i, v in enumerate(hint)}
    opts = SearchOptions(count_only=True, time_budget=time_budget)
    census = _run_hom(g, Graph.complete(k), opts, stop_first=True, preassigned=pre, collect=True)
    if census.partial and census.total == 0:
        raise TimeBudgetExceeded("colorability search aborted", partial=None)
    if census.total == 0:
        return False, None
    return True, census.solutions[0].images.tolist()


def chromatic_number(g: Graph, time_budget: float | None = None) -> tuple[int, list[int]]:
    """Exact chromatic number with a witness colouring.

    Iterates k-colorability upward from the clique number.
    """
    if g.n == 0:
        raise BadParameter("empty graph")
    if g.is_null():
        return 1, [0] * g.n
    start = time.monotonic()
    omega, clique = clique_number(g, time_budget)
    k = omega
    while True:
        left = None
        if time_budget is not None:
            left = time_budget - (time.monotonic() - start)
            if left <= 0:
                raise TimeBudgetExceeded("chromatic search ran out of budget", partial=k)
        ok, colouring = is_k_colorable(g, k, clique_hint=clique, time_budget=left)
        if ok:
            assert _is_proper(g, colouring)
            return k, colouring
        k += 1


def _is_proper(g: Graph, colouring) -> bool:
    c = np.asarray(colouring)
    iu, iv = np.nonzero(np.triu(g.dense, 1))
    return bool((c[iu] != c[iv]).all())


def find_homomorphism(
    src: Graph, dst: Graph, opts: SearchOptions | None = None
) -> Homomorphism | None:
    """One homomorphism matching the filters, or None when none exists.

    Deterministic for fixed options (existence mode never splits the root).
    """
    opts = opts or SearchOptions()
    census = _run_hom(src, dst, opts, stop_first=True, collect=True)
    if census.partial and not census.solutions:
        raise TimeBudgetExceeded("homomorphism search aborted", partial=None)
    if not census.solutions:
        return None
    hom = census.solutions[0]
    assert hom.is_valid()
    return hom


def enumerate_endomorphisms(g: Graph, opts: SearchOptions | None = None) -> EndoCensus:
    """Every endomorphism matching the filters, exactly once, with histogram.

    proper_only restricts to rank < n. With count_only, solutions are not
    materialised; otherwise they arrive in deterministic order when
    parallelism is 1 (and in root-split order otherwise).
    """
    opts = opts or SearchOptions()
    census = _run_hom(g, g, opts)
    if census.partial:
        raise TimeBudgetExceeded(
            f"endomorphism enumeration aborted after {census.nodes} nodes",
            partial=census,
        )
    return census


def automorphism_count(g: Graph, time_budget: float | None = None) -> int:
    """|Aut(g)| via injective rank-n endomorphism enumeration."""
    opts = SearchOptions(count_only=True, time_budget=time_budget)
    census = _run_hom(g, g, opts, injective=True, collect=False)
    if census.partial:
        raise TimeBudgetExceeded("automorphism count aborted", partial=census)
    return census.total


def find_isomorphism(src: Graph, dst: Graph) -> np.ndarray | None:
    """A labelled isomorphism src -> dst, or None. Used for canonical matchings."""
    if src.n != dst.n or src.edge_count() != dst.edge_count():
        return None
    if sorted(src.degrees.tolist()) != sorted(dst.degrees.tolist()):
        return None
    opts = SearchOptions(rank_filter=frozenset([src.n]))
    census = _run_hom(src, dst, opts, injective=True, stop_first=True, collect=True)
    if not census.solutions:
        return None
    images = census.solutions[0].images
    # edge counts match and edges map to edges injectively, so this is an iso
    assert is_homomorphism(src, dst, images)
    return images


def default_jobs() -> int:
    env = os.environ.get("SYNCHRO_JOBS")
    if env:
        return max(1, int(env))
    return 1
