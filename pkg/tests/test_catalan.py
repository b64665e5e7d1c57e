import pytest

from torscat.catalan import (
    DyckPath,
    binary_trees,
    brick_forcing_poset,
    dyck_lattice,
    dyck_paths,
    dyck_to_ideal,
    parens_to_tree,
    rel_star_poset,
    tamari_lattice,
    tree_to_parens,
    typeA_torsion_classes,
    typeA_torsion_lattice,
)
from torscat.lattice import FinLattice, congruence_lattice, is_congruence_uniform, lattice_isomorphic
from torscat.poset import Poset, ideal_lattice, interval_poset, order_ideals, poset_isomorphic

CATALAN = [1, 1, 2, 5, 14, 42, 132]


def test_dyck_path_validation():
    p = DyckPath("UUDUDD")
    assert p.n == 3 and p.heights == (0, 1, 2, 1, 2, 1, 0)
    with pytest.raises(ValueError):
        DyckPath("UDD")
    with pytest.raises(ValueError):
        DyckPath("DU")
    with pytest.raises(ValueError):
        DyckPath("UX")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_dyck_counts(n):
    assert len(dyck_paths(n)) == CATALAN[n]
    assert dyck_lattice(n).n == CATALAN[n]


def test_dyck_lattice_structure():
    L = dyck_lattice(1)
    assert L.n == 1
    for n in (2, 3, 4, 5):
        L = dyck_lattice(n)
        assert L.is_distributive()
        # zigzag is the bottom element
        assert L.labels[L.bottom()] == "UD" * n
        assert L.labels[L.top()] == "U" * n + "D" * n


def test_dyck_meet_is_pointwise_min():
    L = dyck_lattice(3)
    zig = L.labels.index("UDUDUD")
    for x in range(L.n):
        assert L.meet[zig, x] == zig


def test_dyck_to_ideal_extremes():
    for n in (2, 3, 4):
        P = interval_poset(n - 1)
        assert dyck_to_ideal("UD" * n, target=P).mask == 0
        full = dyck_to_ideal("U" * n + "D" * n, target=P)
        assert bin(full.mask).count("1") == P.n == n * (n - 1) // 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_dyck_to_ideal_order_isomorphism(n):
    P = interval_poset(n - 1) if n >= 2 else None
    paths = [DyckPath(s) for s in dyck_paths(n)]
    ideals = [dyck_to_ideal(q, target=P) for q in paths]
    assert len({i.mask for i in ideals}) == len(paths)
    assert {i.mask for i in ideals} == {i.mask for i in order_ideals(P)}
    for i, a in enumerate(paths):
        for j, b in enumerate(paths):
            assert (a <= b) == (ideals[i].mask & ~ideals[j].mask == 0)


def test_tree_serialization_roundtrip():
    for n in range(5):
        for t in binary_trees(n):
            assert parens_to_tree(tree_to_parens(t)) == t
    strings = {tree_to_parens(t) for t in binary_trees(4)}
    assert len(strings) == CATALAN[4]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_tamari_counts(n):
    assert tamari_lattice(n).n == CATALAN[n]


def test_tamari_small_structures():
    assert tamari_lattice(1).n == 1
    t2 = tamari_lattice(2)
    assert t2.n == 2 and t2.cover_pairs() == [(0, 1)] or len(t2.cover_pairs()) == 1
    n5 = FinLattice.from_order(
        Poset.from_leq_pairs("0abc1", [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    )
    assert lattice_isomorphic(tamari_lattice(3), n5) is not None


def test_tamari_semidistributive_not_distributive():
    for n in (3, 4, 5):
        t = tamari_lattice(n)
        assert t.is_semidistributive()
        assert not t.is_distributive()
        assert is_congruence_uniform(t)


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 14), (4, 42)])
def test_typeA_counts(n, count):
    assert len(typeA_torsion_classes(n)) == count


def test_typeA_bounds():
    with pytest.raises(ValueError):
        typeA_torsion_classes(7)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_typeA_isomorphic_to_tamari(n):
    assert lattice_isomorphic(typeA_torsion_lattice(n), tamari_lattice(n + 1)) is not None


def test_brick_forcing_poset():
    assert brick_forcing_poset(1).n == 1
    assert poset_isomorphic(brick_forcing_poset(2), interval_poset(2).opposite()) is not None
    # composing with the ideal lattice gives the dual Dyck lattice; the
    # straight Dyck lattice arises from the opposite orientation
    for n in (2, 3, 4):
        assert (
            lattice_isomorphic(
                ideal_lattice(brick_forcing_poset(n).opposite()), dyck_lattice(n + 1)
            )
            is not None
        )
        assert (
            lattice_isomorphic(
                ideal_lattice(brick_forcing_poset(n)), dyck_lattice(n + 1).opposite()
            )
            is not None
        )


def test_congruence_lattice_of_tamari_is_dyck():
    for n in (2, 3, 4):
        assert lattice_isomorphic(congruence_lattice(tamari_lattice(n)), dyck_lattice(n)) is not None


def test_rel_star_alias():
    assert poset_isomorphic(rel_star_poset(3), interval_poset(2)) is not None
    with pytest.raises(ValueError):
        rel_star_poset(1)
