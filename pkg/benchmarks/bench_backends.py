#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-Python fallback.

Runs each workload under both backends (SYNCHRO_BACKEND is overridden in
process) and prints wall times plus speedup. The flagship 45-vertex census
is numba-only by default; pass --full to run it pure as well (minutes).
"""

import argparse
import time


from synchro import catalog
from synchro._kernels import force_backend
from synchro.core import PairClosure
from synchro.graphs import Graph, box_product, triangular_graph
from synchro.perms import PermGroup, Permutation
from synchro.search import SearchOptions, chromatic_number, clique_number, enumerate_endomorphisms
from synchro.transforms import Transformation


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


def workloads(full):
    rook = box_product(Graph.complete(3), Graph.complete(3))
    t8 = triangular_graph(8)
    lg = catalog.tutte_coxeter_line_graph()
    g45 = catalog.pgammal_2_9_on_line_graph()
    rook4 = catalog.rook_group(4)
    witness = Transformation(
        enumerate_endomorphisms(
            lg, SearchOptions(proper_only=True, rank_filter=frozenset([7]))
        ).solutions[0].images
    )

    items = [
        ("clique T(8)", lambda: clique_number(t8)[0], True),
        ("chromatic L(TC), 45 vertices", lambda: chromatic_number(lg)[0], True),
        ("endomorphisms of K3xK3 rook graph", lambda: enumerate_endomorphisms(rook).total, True),
        ("pair closure, degree 45", lambda: PairClosure.from_instance(g45, witness).all_collapsible(), True),
        ("primitivity of rook group on 16", lambda: rook4.is_primitive(), True),
        (
            "census 103680 endos, 45 vertices",
            lambda: enumerate_endomorphisms(
                lg, SearchOptions(proper_only=True, count_only=True)
            ).total,
            full,
        ),
    ]
    return items


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--full", action="store_true", help="run the 45-vertex census pure too")
    args = ap.parse_args()

    items = workloads(args.full)

    force_backend("numba")
    # warm the JIT so compile time is not billed to the first workload
    clique_number(Graph.complete(4))
    enumerate_endomorphisms(Graph.complete(3))
    PairClosure.from_instance(
        PermGroup([Permutation([1, 0])]), Transformation([0, 0])
    )
    catalog.rook_group(3).is_primitive()

    numba_times = {}
    results = {}
    for name, fn, _ in items:
        numba_times[name], results[name] = timed(fn)

    force_backend("pure")
    pure_times = {}
    for name, fn, run_pure in items:
        if not run_pure:
            pure_times[name] = None
            continue
        t, out = timed(fn)
        assert out == results[name], f"backend mismatch on {name}: {out} != {results[name]}"
        pure_times[name] = t
    force_backend("numba")

    width = max(len(n) for n, _, _ in items)
    print(f"\n{'workload'.ljust(width)}  {'numba':>10}  {'pure':>10}  {'speedup':>8}")
    for name, _, _ in items:
        tn = numba_times[name]
        tp = pure_times[name]
        if tp is None:
            print(f"{name.ljust(width)}  {tn:>9.3f}s  {'skipped':>10}  {'-':>8}")
        else:
            print(f"{name.ljust(width)}  {tn:>9.3f}s  {tp:>9.3f}s  {tp / tn:>7.1f}x")
    print("\nresults:", {k: results[k] for k in results})


if __name__ == "__main__":
    main()
