import functools
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from condmon import freemonoid as fm
from condmon.conductor import (
    IdealExtensionMonoid,
    VectorSubmonoid,
    conductor_condition,
    diagonal_monoid,
    ideal_condition,
)
from condmon.errors import BadParameters, DimensionMismatch, SpecError
from condmon.group import FiniteAbelianGroup
from condmon.suites import random_monoids

from oracles import BruteMonoid, ideal_member


def H(*gens, **kw):
    return IdealExtensionMonoid(list(gens), **kw)


def vectors(elements):
    return {x.vector for x in elements}


def brute_atoms_dividing(gens, a):
    B = BruteMonoid(ideal_member(gens))
    return {d for d in itertools.product(*(range(x + 1) for x in a)) if B.is_atom((0, d))}


# -- construction -------------------------------------------------------------


def test_rejects_non_antichain_naming_dominated():
    with pytest.raises(SpecError, match=r"\(2,2\) is dominated by \(1,1\)"):
        H((1, 1), (2, 2))


@pytest.mark.parametrize("gens", [[], [(0, 0)], [(1, 1), (1, 1)]])
def test_rejects_bad_generators(gens):
    with pytest.raises(SpecError):
        IdealExtensionMonoid(gens)


def test_dimension_checked():
    with pytest.raises(DimensionMismatch):
        H((1, 1)).contains((1, 1, 1))


# -- membership and atoms -----------------------------------------------------


def test_contains_examples():
    M = H((1, 1))
    assert M.contains((0, 0))
    assert M.contains((2, 3))
    assert not M.contains((2, 0))


def test_is_atom_examples():
    M = H((1, 1))
    assert M.is_atom((1, 2))
    assert not M.is_atom((2, 2))
    assert not M.is_atom((2, 0))


def test_atoms_dividing_examples():
    assert vectors(H((1, 1)).atoms_dividing((3, 3))) == {(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)}
    assert vectors(H((1, 1)).atoms_dividing((1, 1))) == {(1, 1)}
    expected = {(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (3, 4), (4, 3)}
    assert vectors(H((2, 2)).atoms_dividing((4, 4))) == expected
    # frozen values agree with the split-search oracle
    assert brute_atoms_dividing([(1, 1)], (3, 3)) == {(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)}
    assert brute_atoms_dividing([(2, 2)], (4, 4)) == expected


@pytest.mark.parametrize("seed", range(4))
def test_atoms_dividing_matches_oracle(seed):
    for M in random_monoids(6, seed, dims=(1, 2)):
        top = (5,) * M.s
        assert vectors(M.atoms_dividing(top)) == brute_atoms_dividing(M.generators, top)


def test_unit_group_atoms():
    M = H((1,), unit_group=FiniteAbelianGroup((2,)))
    C2 = FiniteAbelianGroup((2,))
    atoms = M.atoms_dividing(M.element((C2.zero, (2,))))
    assert sorted((x.unit.residues, x.vector) for x in atoms) == [((0,), (1,)), ((1,), (1,))]


def test_minimal_elements():
    assert H((1, 1)).minimal_elements() == {(1, 1)}
    assert H((3, 0), (0, 3)).minimal_elements() == {(3, 0), (0, 3)}
    M = H((2, 1), (1, 2))
    assert M.minimal_elements() == {(2, 1), (1, 2)}
    assert all(M.is_atom(m) for m in M.minimal_elements())


# -- gaps ------------------------------------------------------------------


def test_gap_set_examples():
    g = H((1, 1)).gap_set((3, 3))
    assert set(g.gaps) == {(a, 0) for a in range(1, 4)} | {(0, b) for b in range(1, 4)}
    assert not g.complete
    g = H((1, 0), (0, 1)).gap_set((4, 4))
    assert g.gaps == [] and g.complete
    g = H((2, 0), (0, 2), (1, 1)).gap_set((5, 5))
    assert set(g.gaps) == {(1, 0), (0, 1)} and g.complete


def test_gap_set_is_finite():
    assert not H((1, 1)).gap_set_is_finite()
    assert H((2, 0), (0, 2), (1, 1)).gap_set_is_finite()
    assert H((3,)).gap_set_is_finite()


def test_gap_absorbing_examples():
    assert H((1, 1)).is_gap_absorbing((6, 6)).ok
    assert H((2, 2)).is_gap_absorbing((8, 8)).ok


def test_diagonal_fails_with_witness():
    res = diagonal_monoid(2).is_gap_absorbing((6, 6))
    assert not res.ok
    g, u, w = res.witness
    D = diagonal_monoid(2)
    assert not D.contains(g) and D.is_atom(u) and fm.add(g, u) == w
    # w is neither an atom nor a product of two atoms of the diagonal
    assert not D.contains(w)


# -- C-monoid data --------------------------------------------------------


def test_cmonoid_alpha():
    assert H((1, 1)).cmonoid_alpha() == 1
    assert H((2, 0), (0, 3), (1, 1)).cmonoid_alpha() == 3
    assert H((5, 2)).cmonoid_alpha() == 5


def test_class_semigroup_examples():
    cs = H((1, 1)).class_semigroup()
    assert cs.size == 4
    assert sorted(cs.representatives) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    # H = F: every y has y^-1 H = F, so one class
    assert H((1,)).class_semigroup().size == 1
    M = H((2, 2))
    assert M.class_semigroup().size == M.class_count_uncapped()


def test_class_semigroup_requires_reduced():
    with pytest.raises(BadParameters):
        H((1,), unit_group=FiniteAbelianGroup((2,))).class_semigroup()


@pytest.mark.parametrize("seed", range(3))
def test_class_semigroup_stable(seed):
    for M in random_monoids(6, seed, dims=(1, 2)):
        a = M.cmonoid_alpha()
        n = M.class_semigroup().size
        assert M.class_semigroup(a + 1).size == n
        ok, checks = M.cmonoid_criterion()
        assert ok and checks > 0


def test_class_table_is_commutative_and_associative():
    cs = H((2, 1), (1, 3)).class_semigroup()
    t, n = cs.table, cs.size
    for i, j in itertools.product(range(n), repeat=2):
        assert t[i][j] == t[j][i]
    for i, j, k in itertools.product(range(n), repeat=3):
        assert t[t[i][j]][k] == t[i][t[j][k]]


# -- structural properties ------------------------------------------------------

antichains = st.integers(1, 3).flatmap(
    lambda s: st.sets(st.tuples(*[st.integers(0, 4)] * s).filter(any), min_size=1, max_size=3)
).map(lambda S: sorted(fm.dickson_min(S)))


@given(antichains)
def test_ideal_iff_conductor(gens):
    M = IdealExtensionMonoid(gens)
    win = fm.Box((5,) * M.s)
    assert ideal_condition(M.member_vector, win)
    assert conductor_condition(M.member_vector, win)


def test_ideal_and_conductor_conditions_fail_together_off_ideal():
    D = diagonal_monoid(2)
    win = fm.Box((5, 5))
    assert not ideal_condition(D.contains, win)
    assert not conductor_condition(D.contains, win)
    # a numerical monoid that is not an ideal of N_0: <2,3>
    N = VectorSubmonoid(1, lambda v: v[0] != 1)
    assert ideal_condition(N.contains, fm.Box((9,)))
    N2 = VectorSubmonoid(1, lambda v: v[0] % 2 == 0)
    assert not ideal_condition(N2.contains, fm.Box((9,)))
    assert not conductor_condition(N2.contains, fm.Box((9,)))


@settings(max_examples=40)
@given(antichains)
def test_minimal_elements_are_atoms_and_hereditary(gens):
    M = IdealExtensionMonoid(gens)
    top = (3,) * M.s
    box = list(itertools.product(*(range(x + 1) for x in top)))
    atom = functools.lru_cache(maxsize=None)(M.is_atom)
    assert all(M.is_atom(m) for m in M.minimal_elements())
    for a in box:
        if not (M.member_vector(a) and any(a)):
            continue
        for s in box:
            # if s + a is an atom then so is a
            if atom(fm.add(s, a)):
                assert atom(a)


@given(antichains)
def test_non_minimal_atoms_come_from_a_gap(gens):
    M = IdealExtensionMonoid(gens)
    mins = M.minimal_elements()
    for a in itertools.product(*(range(5) for _ in range(M.s))):
        if not M.is_atom(a) or a in mins:
            continue
        assert any(
            not M.member_vector(g) and fm.checked_subtract(a, g) in mins
            for g in fm.divisor_enumeration(a)
        )


def test_random_monoids_are_gap_absorbing():
    for M in random_monoids(20, 5):
        assert M.is_gap_absorbing((6,) * M.s).ok
