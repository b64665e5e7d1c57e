import json

import pytest

from torscat.catalan import tamari_lattice
from torscat.lattice import (
    Congruence,
    FinLattice,
    NotALattice,
    all_congruences,
    brute_force_congruences,
    congruence_join,
    congruence_lattice,
    forcing_poset,
    is_congruence_uniform,
    lattice_isomorphic,
    principal_congruence,
)
from torscat.poset import Poset, ideal_lattice, interval_poset, poset_isomorphic


def pentagon():
    # 0 < a < b < 1 on the long side, 0 < c < 1 on the short one
    return FinLattice.from_order(
        Poset.from_leq_pairs(["0", "a", "b", "c", "1"], [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    )


def diamond():
    return FinLattice.from_order(
        Poset.from_leq_pairs(["0", "a", "b", "c", "1"], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    )


def boolean2():
    return FinLattice.from_order(
        Poset.from_leq_pairs(["0", "a", "b", "1"], [(0, 1), (0, 2), (1, 3), (2, 3)])
    )


def chain(n):
    return FinLattice.from_order(Poset.chain(n))


CORPUS = None


def corpus():
    global CORPUS
    if CORPUS is None:
        small = [chain(k) for k in range(1, 6)]
        small += [boolean2(), pentagon(), diamond()]
        # a 6-element and a 7-element lattice with less symmetry
        small.append(
            FinLattice.from_order(
                Poset.from_leq_pairs(
                    list("012345"), [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (2, 5), (5, 4)]
                )
            )
        )
        small.append(
            FinLattice.from_order(
                Poset.from_leq_pairs(
                    list("0123456"),
                    [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5), (5, 6)],
                )
            )
        )
        CORPUS = small
    return CORPUS


def test_from_order_chain():
    L = chain(2)
    assert L.meet[0, 1] == 0 and L.join[0, 1] == 1


def test_from_order_rejects_non_lattice():
    with pytest.raises(NotALattice):
        FinLattice.from_order(Poset.antichain(2))
    # bowtie: two maximal, two minimal elements below both
    with pytest.raises(NotALattice):
        FinLattice.from_order(
            Poset.from_leq_pairs("abcd", [(0, 2), (0, 3), (1, 2), (1, 3)])
        )


def test_pentagon_structure():
    n5 = pentagon()
    assert not n5.is_distributive()
    assert n5.is_semidistributive()
    assert len(n5.join_irreducibles()) == 3


def test_diamond_structure():
    m3 = diamond()
    assert not m3.is_distributive()
    assert not m3.is_semidistributive()


def test_boolean_distributive():
    assert boolean2().is_distributive()
    assert [x for x, _ in boolean2().join_irreducibles()] == [1, 2]


def test_join_irreducibles_chain():
    L = chain(2)
    assert L.join_irreducibles() == [(1, 0)]


def test_principal_congruence_trivial():
    L = pentagon()
    assert principal_congruence(L, 2, 2).is_discrete()
    two = chain(2)
    assert principal_congruence(two, 0, 1).is_full()


def test_principal_congruence_pentagon_oracle():
    # least compatible partition containing the given pair, by brute force
    n5 = pentagon()
    allc = brute_force_congruences(n5)
    for a, b in n5.cover_pairs():
        cg = principal_congruence(n5, a, b)
        best = None
        for c in allc:
            if c.collapses(a, b) and (best is None or c.refines(best)):
                best = c
        assert cg == best


def test_congruence_lattice_sizes():
    assert congruence_lattice(chain(2)).n == 2
    assert congruence_lattice(tamari_lattice(3)).n == 5
    assert congruence_lattice(tamari_lattice(4)).n == 14


def test_congruence_lattices_distributive():
    for L in corpus():
        assert congruence_lattice(L).is_distributive()


def test_congruence_compatibility_invariant():
    for L in corpus()[:8]:
        for c in all_congruences(L):
            for x in range(L.n):
                for y in range(L.n):
                    if not c.collapses(x, y):
                        continue
                    for z in range(L.n):
                        assert c.collapses(L.meet[x, z], L.meet[y, z])
                        assert c.collapses(L.join[x, z], L.join[y, z])


def test_brute_force_oracle_matches_fixpoint():
    for L in corpus():
        if L.n > 7:
            continue
        assert [c.block for c in all_congruences(L)] == [
            c.block for c in brute_force_congruences(L)
        ]


def test_congruence_join_is_partition_join():
    c1 = Congruence([0, 0, 2, 3])
    c2 = Congruence([0, 1, 2, 2])
    j = congruence_join(c1, c2)
    assert j.block == (0, 0, 2, 2)


def test_forcing_poset_trivial():
    assert forcing_poset(chain(2)).n == 1


def test_forcing_poset_tamari():
    fp3 = forcing_poset(tamari_lattice(3))
    assert fp3.n == 3
    assert ideal_lattice(fp3).n == 5
    assert poset_isomorphic(fp3, interval_poset(2).opposite()) is not None
    fp4 = forcing_poset(tamari_lattice(4))
    assert poset_isomorphic(fp4, interval_poset(3).opposite()) is not None


def test_congruence_lattice_vs_forcing_ideals():
    # the refinement-ordered congruence lattice is the ideal lattice of the
    # forcing poset; the exported coarsening order is its opposite
    for L in corpus():
        if not is_congruence_uniform(L):
            continue
        C = congruence_lattice(L)
        assert lattice_isomorphic(C, ideal_lattice(forcing_poset(L).opposite())) is not None
        assert lattice_isomorphic(C.opposite(), ideal_lattice(forcing_poset(L))) is not None


def test_congruence_uniformity():
    assert is_congruence_uniform(boolean2())
    assert is_congruence_uniform(pentagon())
    assert not is_congruence_uniform(diamond())
    for n in (2, 3, 4, 5):
        assert is_congruence_uniform(tamari_lattice(n))


def test_lattice_isomorphic_basics():
    n5 = pentagon()
    assert lattice_isomorphic(n5, n5) == [0, 1, 2, 3, 4]
    assert lattice_isomorphic(chain(2), boolean2()) is None
    assert lattice_isomorphic(chain(4), boolean2()) is None
    assert lattice_isomorphic(pentagon(), diamond()) is None


def test_lattice_isomorphic_verified_map():
    L = ideal_lattice(interval_poset(2))
    C = congruence_lattice(tamari_lattice(3))
    m = lattice_isomorphic(L, C)
    assert m is not None
    for a in range(L.n):
        for b in range(L.n):
            assert C.meet[m[a], m[b]] == m[L.meet[a, b]]
            assert C.join[m[a], m[b]] == m[L.join[a, b]]


def test_opposite_lattice():
    n5 = pentagon()
    op = n5.opposite()
    assert op.bottom() == n5.top() and op.top() == n5.bottom()
    assert lattice_isomorphic(op.opposite(), n5) is not None


def test_json_roundtrip():
    L = pentagon()
    blob = json.dumps(L.to_json())
    M = FinLattice.from_json(blob, labels=L.labels)
    assert M.up == L.up and (M.meet == L.meet).all()


def test_dot_export():
    dot = pentagon().to_dot()
    assert dot.count("->") == 5
