import numpy as np
import pytest

from oracle import brute_endomorphisms
from synchro import catalog
from synchro._kernels import backend, force_backend
from synchro.errors import TimeBudgetExceeded
from synchro.graphs import Graph, box_product, butterfly, complement, triangular_graph
from synchro.search import (
    SearchOptions,
    automorphism_count,
    chromatic_number,
    clique_number,
    enumerate_endomorphisms,
    find_homomorphism,
    find_isomorphism,
    is_endomorphism,
    is_homomorphism,
)
from synchro.transforms import Transformation


def random_graph(rng, n, p=0.4):
    d = rng.random((n, n)) < p
    d = np.triu(d, 1)
    return Graph.from_dense(d | d.T)


def test_clique_complete_graphs():
    for n in (1, 2, 5, 9):
        size, witness = clique_number(Graph.complete(n))
        assert size == n and len(witness) == n


def test_clique_line45(line45):
    size, witness = clique_number(line45)
    assert size == 3
    sub_ok = all(line45.has_edge(u, v) for i, u in enumerate(witness) for v in witness[:i])
    assert sub_ok


def test_clique_t6():
    assert clique_number(triangular_graph(6))[0] == 5


def test_witness_clique_is_complete():
    rng = np.random.default_rng(10)
    for _ in range(20):
        g = random_graph(rng, int(rng.integers(2, 20)))
        size, witness = clique_number(g)
        assert len(witness) == size
        assert all(g.has_edge(u, v) for i, u in enumerate(witness) for v in witness[:i])


def test_chromatic_line45(line45):
    chi, colouring = chromatic_number(line45)
    assert chi == 3
    sizes = sorted(colouring.count(c) for c in set(colouring))
    assert sizes == [15, 15, 15]


def test_chromatic_c5_and_rook():
    assert chromatic_number(Graph.cycle(5))[0] == 3
    rook = box_product(Graph.complete(3), Graph.complete(3))
    assert chromatic_number(rook)[0] == 3


def test_chromatic_witness_proper_and_geq_clique():
    rng = np.random.default_rng(11)
    for _ in range(15):
        g = random_graph(rng, int(rng.integers(2, 14)))
        chi, colouring = chromatic_number(g)
        omega, _ = clique_number(g)
        assert chi >= omega
        for u, v in g.edges():
            assert colouring[u] != colouring[v]


def test_find_homomorphism_k3_to_k3():
    hom = find_homomorphism(Graph.complete(3), Graph.complete(3))
    assert hom is not None and hom.is_valid()


def test_find_homomorphism_odd_cycle_unsat():
    assert find_homomorphism(Graph.cycle(5), Graph.complete(2)) is None


def test_find_homomorphism_rank_filter():
    rook = box_product(Graph.complete(4), Graph.complete(4))
    hom = find_homomorphism(rook, complement(rook), SearchOptions(rank_filter=frozenset([6])))
    assert hom is not None and hom.rank == 6 and hom.is_valid()


def test_enumerate_endomorphisms_k3_proper_none():
    census = enumerate_endomorphisms(Graph.complete(3), SearchOptions(proper_only=True))
    assert census.total == 0
    full = enumerate_endomorphisms(Graph.complete(3))
    assert full.total == 6


def test_enumerate_path3_matches_brute_force():
    g = Graph.path(3)
    census = enumerate_endomorphisms(g)
    assert census.total == len(brute_endomorphisms(g))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_enumerate_small_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 8))
    g = random_graph(rng, n)
    census = enumerate_endomorphisms(g)
    brute = brute_endomorphisms(g)
    assert census.total == len(brute)
    ranks = np.sort(brute, axis=1)
    ranks = (np.diff(ranks, axis=1) != 0).sum(axis=1) + 1
    expected = {int(r): int(c) for r, c in zip(*np.unique(ranks, return_counts=True))}
    assert census.histogram() == expected
    seen = {tuple(h.images.tolist()) for h in census.solutions}
    assert len(seen) == census.total
    assert seen == {tuple(row.tolist()) for row in brute}


def test_enumeration_independent_of_parallelism(line45):
    opts1 = SearchOptions(proper_only=True, count_only=True, rank_filter=frozenset([3]))
    opts2 = SearchOptions(
        proper_only=True, count_only=True, rank_filter=frozenset([3]), parallelism=2
    )
    a = enumerate_endomorphisms(line45, opts1)
    b = enumerate_endomorphisms(line45, opts2)
    assert a.histogram() == b.histogram() == {3: 25920}


def test_every_solution_revalidates():
    g = butterfly()
    census = enumerate_endomorphisms(g, SearchOptions(proper_only=True))
    assert census.total > 0
    for hom in census.solutions:
        assert is_endomorphism(g, hom.as_transformation())


def test_is_endomorphism():
    assert not is_endomorphism(Graph.complete(2), Transformation([0, 0]))
    g = Graph.cycle(5)
    assert is_endomorphism(g, Transformation([1, 2, 3, 4, 0]))
    assert is_homomorphism(Graph.cycle(5), Graph.cycle(5), [1, 2, 3, 4, 0])
    assert not is_homomorphism(Graph.cycle(5), Graph.cycle(5), [0, 0, 1, 2, 3])


def test_automorphism_counts():
    assert automorphism_count(Graph.complete(4)) == 24
    assert automorphism_count(butterfly()) == 8
    assert automorphism_count(Graph.cycle(6)) == 12


def test_automorphism_count_tutte_coxeter():
    assert automorphism_count(catalog.tutte_coxeter()) == 1440


def test_find_isomorphism_relabelled():
    rng = np.random.default_rng(12)
    for _ in range(10):
        g = random_graph(rng, int(rng.integers(2, 12)))
        perm = rng.permutation(g.n)
        h = g.relabel(perm)
        iso = find_isomorphism(g, h)
        assert iso is not None
        d1, d2 = g.dense, h.dense
        assert np.array_equal(d2[np.ix_(iso, iso)], d1)
    assert find_isomorphism(Graph.cycle(6), Graph.path(6)) is None


def test_time_budget_aborts():
    g = complement(box_product(Graph.complete(5), Graph.complete(5)))
    opts = SearchOptions(count_only=True, time_budget=0.05)
    with pytest.raises(TimeBudgetExceeded):
        enumerate_endomorphisms(g, opts)


def test_backend_parity_small():
    """The pure kernels must agree with the compiled ones exactly."""
    prev = backend().name
    rng = np.random.default_rng(13)
    cases = [random_graph(rng, int(rng.integers(2, 9))) for _ in range(4)]
    try:
        results = {}
        for name in ("numba", "pure"):
            force_backend(name)
            results[name] = [
                (
                    clique_number(g)[0],
                    chromatic_number(g)[0],
                    enumerate_endomorphisms(g).histogram(),
                )
                for g in cases
            ]
        assert results["numba"] == results["pure"]
    finally:
        force_backend(prev)
