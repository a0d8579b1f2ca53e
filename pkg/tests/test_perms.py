import numpy as np
import pytest

from oracle import finest_invariant_partition
from synchro import catalog
from synchro.errors import BadParameter, NotTransitive
from synchro.graphs import Graph
from synchro.perms import (
    PermGroup,
    Permutation,
    group_to_text,
    parse_group_file,
    parse_permutation,
)


def cyclic(n):
    return PermGroup([Permutation.from_cycles([tuple(range(n))], n)])


def sym(n):
    return PermGroup(
        [
            Permutation.from_cycles([(0, 1)], n),
            Permutation.from_cycles([tuple(range(n))], n),
        ]
    )


def dihedral4():
    return PermGroup([parse_permutation("(1 2 3 4)"), parse_permutation("(1 3)", degree=4)])


def test_permutation_invariants():
    p = parse_permutation("(1 2 3)(4 5)")
    assert p.compose(p.inverse()) == Permutation.identity(5)
    with pytest.raises(BadParameter):
        Permutation([0, 0, 1])


def test_orbit_single_cycle():
    assert cyclic(4).orbit(0) == {0, 1, 2, 3}


def test_orbit_fixed_point():
    g = PermGroup([parse_permutation("(1 2)", degree=3)])
    assert g.orbit(2) == {2}
    assert not g.is_transitive()


def test_orbit_catalog_group_transitive():
    g = catalog.pgammal_2_9_deg45()
    assert g.orbit(0) == set(range(45))
    assert g.is_transitive()


def test_transitive_s4():
    assert sym(4).is_transitive()


def test_block_system_dihedral_matches_brute_force():
    g = dihedral4()
    assert g.block_system((0, 2)) == [(0, 2), (1, 3)]
    assert g.block_system((0, 2)) == finest_invariant_partition(g, 0, 2)


def test_block_system_2transitive_universal():
    assert sym(4).block_system((0, 1)) == [(0, 1, 2, 3)]


def test_block_system_c6_matches_brute_force():
    g = cyclic(6)
    assert g.block_system((0, 3)) == [(0, 3), (1, 4), (2, 5)]
    assert g.block_system((0, 3)) == finest_invariant_partition(g, 0, 3)


def test_block_system_random_against_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(3, 7))
        gens = [Permutation(rng.permutation(n)) for _ in range(int(rng.integers(1, 3)))]
        g = PermGroup(gens)
        if not g.is_transitive():
            continue
        b = int(rng.integers(1, n))
        got = g.block_system((0, b))
        assert got == finest_invariant_partition(g, 0, b)
        # invariance: every generator permutes the parts setwise
        parts = {p for p in got}
        for gen in g.generators:
            mapped = {tuple(sorted(int(gen.images[x]) for x in p)) for p in parts}
            assert mapped == parts


def test_primitivity():
    assert catalog.pgammal_2_9_deg45().is_primitive()
    assert not dihedral4().is_primitive()
    assert sym(5).is_primitive()
    assert cyclic(6).is_primitive() is False
    assert cyclic(2).is_primitive()  # degree-2 convention
    assert PermGroup([Permutation([0])]).is_primitive()
    assert sym(4).is_primitive()
    # primitive implies transitive by construction
    g = PermGroup([parse_permutation("(1 2)", degree=3)])
    assert not g.is_primitive()


def test_suborbits_s4():
    assert sym(4).suborbit_lengths() == (1, 3)


def test_suborbits_c5():
    assert cyclic(5).suborbit_lengths() == (1, 1, 1, 1, 1)


def test_suborbits_catalog45():
    lens = catalog.pgammal_2_9_deg45().suborbit_lengths()
    assert 4 in lens
    assert sum(lens) == 45


def test_suborbits_require_transitive():
    g = PermGroup([parse_permutation("(1 2)", degree=3)])
    with pytest.raises(NotTransitive):
        g.suborbit_lengths()


def test_orbital_graph_s4_is_k4():
    assert sym(4).orbital_graph((0, 1)) == Graph.complete(4)


def test_orbital_graph_c5_is_cycle():
    assert cyclic(5).orbital_graph((0, 1)) == Graph.cycle(5)


def test_orbital_graph_invariant_under_generators():
    g = dihedral4()
    og = g.orbital_graph((0, 1))
    d = og.dense
    for gen in g.generators:
        img = gen.images
        assert np.array_equal(d[np.ix_(img, img)], d)


def test_orbital_graph_deg45_is_4_regular():
    og = catalog.pgammal_orbital_graph()
    assert og.n == 45 and og.valency() == 4


def test_group_file_round_trip(tmp_path):
    g = dihedral4()
    text = group_to_text(g)
    back = parse_group_file(text)
    assert back.degree == 4
    assert [p.images.tolist() for p in back.generators] == [
        p.images.tolist() for p in g.generators
    ]
    parsed = parse_group_file("# degree 3\n(1 2)\n")
    assert parsed.degree == 3


def test_parse_permutation_formats():
    assert parse_permutation("[2,3,1]") == parse_permutation("(1 2 3)")
    assert parse_permutation("(1,2,3)") == parse_permutation("(1 2 3)")
    with pytest.raises(BadParameter):
        parse_permutation("nonsense")


def test_orbits_invariant_under_generators():
    rng = np.random.default_rng(14)
    for _ in range(15):
        n = int(rng.integers(2, 10))
        g = PermGroup([Permutation(rng.permutation(n)) for _ in range(int(rng.integers(1, 3)))])
        for orb in g.orbits():
            for gen in g.generators:
                assert {int(gen.images[x]) for x in orb} == orb
