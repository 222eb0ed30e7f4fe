import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from condmon import factor
from condmon import freemonoid as fm
from condmon.budget import default_budget
from condmon.conductor import IdealExtensionMonoid, VectorSubmonoid
from condmon.constructions import cycle_monoid, power_primary_monoid
from condmon.errors import BudgetExceeded, NotAMember
from condmon.group import FiniteAbelianGroup
from condmon.zerosum import FIotaMonoid, GSequence, ZeroSumContext

import oracles
from oracles import BruteMonoid, ideal_member

C2 = FiniteAbelianGroup((2,))


def H(*gens, **kw):
    return IdealExtensionMonoid(list(gens), **kw)


def as_pairs(z):
    return tuple(sorted((u.unit.residues[0], u.vector) for u in z.atoms))


def engine_set(M, a):
    return {as_pairs(z) for z in factor.factorizations(M, a)}


def brute_set(gens, a, unit_mod=1):
    B = BruteMonoid(ideal_member(gens), unit_mod)
    return B.factorizations((0, tuple(a)))


def zs(text, group="C2"):
    G = FiniteAbelianGroup.parse(group)
    return FIotaMonoid(ZeroSumContext.full(G)), GSequence.parse(G, text)


# -- factorizations ------------------------------------------------------------


def test_identity():
    M = H((1, 1))
    ef = factor.analyze(M, (0, 0))
    assert len(ef) == 1 and ef.length_set() == [0]
    assert (ef.catenary(), ef.catenary_eq(), ef.catenary_adj()) == (0, 0, 0)


def test_factorizations_33():
    expected = {((0, (1, 1)),) * 3, ((0, (1, 2)), (0, (2, 1)))}
    assert engine_set(H((1, 1)), (3, 3)) == expected
    assert brute_set([(1, 1)], (3, 3)) == expected


def test_factorizations_F_iota():
    M, a = zs("0^2 * g^2")
    got = sorted(sorted(str(u) for u in z.atoms) for z in factor.factorizations(M, a))
    assert got == [["(1)^2", "0", "0"], ["0 * (1)", "0 * (1)"]]


def test_factorization_products():
    M = H((2, 1), (1, 3))
    a = (7, 7)
    for z in factor.factorizations(M, a):
        total = M.identity
        for u in z.atoms:
            total = M.combine(total, u)
            assert M.is_atom(u)
        assert total == M.element(a)
        assert len(z) == len(z.atoms)


def test_not_a_member():
    with pytest.raises(NotAMember):
        factor.analyze(H((1, 1)), (2, 0))


# -- distance and catenary degrees --------------------------------------------------


def test_distance_examples():
    z = factor.factorizations(H((1, 1)), (3, 3))
    assert factor.distance(z[0], z[0]) == 0
    assert factor.distance(z[0], z[1]) == 3
    assert oracles.distance(z[0].atoms, z[1].atoms) == 3


def test_catenary_examples():
    M = H((1, 1))
    assert factor.catenary(M, (3, 3)) == 3
    assert factor.catenary_adj(M, (3, 3)) == 3
    assert factor.catenary_mon(M, (3, 3)) == 3
    assert factor.catenary_eq(M, (3, 3)) == 0
    assert factor.catenary(M, (1, 2)) == 0
    assert factor.catenary_mon(M, (1, 2)) == 0
    U = H((1,), unit_group=C2)
    a = U.element((C2.zero, (2,)))
    assert factor.count_factorizations(U, a) == 2
    assert factor.catenary(U, a) == 2
    assert brute_set([(1,)], (2,), unit_mod=2) == {((0, (1,)), (0, (1,))), ((1, (1,)), (1, (1,)))}


def test_catenary_F_iota():
    M, a = zs("0^2 * g^2")
    assert factor.length_set(M, a) == [2, 3]
    assert factor.catenary(M, a) == 3
    assert factor.catenary_adj(M, a) == 3


def test_cycle_monoid_equal_length_layer():
    M = cycle_monoid(3)
    ef = factor.analyze(M, (1,) * 6)
    layer = [z for z in ef.factorizations() if len(z) == 3]
    assert len(layer) == 2 and factor.distance(*layer) == 3
    assert ef.catenary_eq() == 3 and ef.catenary_mon() >= 3
    M4 = cycle_monoid(4)
    ef4 = factor.analyze(M4, (1,) * 8)
    layer = [z for z in ef4.factorizations() if len(z) == 4]
    edges = [tuple(1 if j in (i, (i + 1) % 8) else 0 for j in range(8)) for i in range(8)]
    matchings = sorted([sorted(edges[0::2]), sorted(edges[1::2])])
    assert sorted(sorted(u.vector for u in z.atoms) for z in layer) == matchings
    assert ef4.catenary_eq() >= 4


def test_length_factorial_and_half_factorial_elements():
    # a single factorization per length: c_eq = 0
    M = H((1, 1))
    ef = factor.analyze(M, (3, 4))
    assert all(n == 1 for n in [list(ef.lengths).count(k) for k in set(ef.lengths)])
    assert ef.catenary_eq() == 0
    # one length only: c_adj = 0
    ef = factor.analyze(M, (2, 4))
    assert ef.length_set() == [2] and ef.catenary_adj() == 0


# -- unions, half-factoriality, primes -------------------------------------------------


def test_union_of_lengths():
    M = H((2, 2))
    box = list(fm.Box((12, 12)))
    assert factor.union_of_lengths(M, box, 0).lengths == [0]
    U = factor.union_of_lengths(M, box, 2)
    assert set(range(2, 7)) <= set(U.lengths) and not U.complete
    C5 = FiniteAbelianGroup((5,))
    F = FIotaMonoid(ZeroSumContext(C5, (C5.element((1,)), C5.element((4,)))))
    assert {2, 3, 4, 5} <= set(factor.union_of_lengths(F, F.domain(10), 2).lengths)


def test_half_factorial_within():
    U = power_primary_monoid((1,), C2)
    dom = [U.element((C2.element((e,)), (n,))) for n in range(11) for e in range(2)]
    assert factor.is_half_factorial_within(U, dom) == (True, None)
    ok, w = factor.is_half_factorial_within(H((1, 1)), sorted(fm.Box((5, 5))))
    assert not ok and tuple(w) == (3, 3)
    assert factor.is_half_factorial_within(H((1, 1)), [(0, 0)]) == (True, None)


def test_primality_witness():
    full = VectorSubmonoid(2, lambda v: True)
    assert factor.primality_witness(full, (1, 0), list(fm.Box((3, 3)))) is None
    for group, text in [("C3", "g^3"), ("C2", "0 * g")]:
        M, u = zs(text, group)
        w = factor.primality_witness(M, u, M.domain(5))
        assert w is not None
        a, b = w
        assert M.divides_in_monoid(u, M.combine(a, b))
        assert not M.divides_in_monoid(u, a) and not M.divides_in_monoid(u, b)


# -- budgets and the streaming path -------------------------------------------------


def test_budget_exceeded_reports_progress():
    M = cycle_monoid(3)
    with pytest.raises(BudgetExceeded) as info:
        factor.analyze(M, (2,) * 6, default_budget(factorization_cap=5))
    assert info.value.progress["Z_count"] == 1543
    assert len(brute_set(M.generators, (2,) * 6)) == 1543


def test_streaming_catenary_matches_dense():
    M = H((1, 1))
    a = (9, 9)
    dense = factor.analyze(M, a)
    assert dense.dense
    sparse = factor.analyze(M, a, default_budget(dense_limit=5))
    assert not sparse.dense
    assert sparse.catenary() == dense.catenary() == dense.catenary_unionfind()


def test_engine_shares_state():
    M = H((1, 2), (2, 1))
    eng = factor.FactorizationEngine(M, (6, 6))
    for v in fm.Box((6, 6)):
        if M.member_vector(v):
            assert eng.length_set(v) == factor.length_set(M, v)
            assert len(eng.analyze(v)) == factor.count_factorizations(M, v)
    with pytest.raises(NotAMember):
        eng.analyze((7, 0))


def test_invariant_report_json():
    rep = factor.invariant_report(H((1, 1)), (3, 3))
    assert rep.to_json() == {
        "element": "(3,3)", "Z_count": 2, "L": [2, 3], "c": 3, "c_eq": 0, "c_adj": 3, "c_mon": 3, "flags": ["interval"]
    }


# -- properties against the brute-force oracle ---------------------------------------

antichains = st.integers(1, 2).flatmap(
    lambda s: st.sets(st.tuples(*[st.integers(0, 3)] * s).filter(any), min_size=1, max_size=3)
).map(lambda S: sorted(fm.dickson_min(S)))


@settings(max_examples=60)
@given(antichains, st.data())
def test_engine_matches_oracle(gens, data):
    M = IdealExtensionMonoid(gens)
    a = tuple(data.draw(st.integers(0, 6)) for _ in range(M.s))
    if not M.member_vector(a):
        return
    Z = brute_set(gens, a)
    assert engine_set(M, a) == Z
    ef = factor.analyze(M, a)
    atomsZ = [tuple(v for _, v in z) for z in Z]
    assert ef.length_set() == sorted({len(z) for z in Z})
    assert ef.catenary() == oracles.catenary(atomsZ)
    assert ef.catenary_eq() == oracles.catenary_eq(atomsZ)
    assert ef.catenary_adj() == oracles.catenary_adj(atomsZ)


@settings(max_examples=60)
@given(antichains, st.data())
def test_metric_and_chain_inequalities(gens, data):
    M = IdealExtensionMonoid(gens)
    a = tuple(data.draw(st.integers(0, 7)) for _ in range(M.s))
    if not M.member_vector(a):
        return
    ef = factor.analyze(M, a)
    Z = ef.factorizations()
    for x, y in itertools.combinations(Z, 2):
        d = factor.distance(x, y)
        assert d == factor.distance(y, x) >= 2 + abs(len(x) - len(y))
    for x, y, z in itertools.combinations(Z[:12], 3):
        assert factor.distance(x, z) <= factor.distance(x, y) + factor.distance(y, z)
    L = ef.length_set()
    if len(Z) >= 2:
        gaps = [q - p for p, q in zip(L, L[1:])]
        assert 2 + max(gaps, default=0) <= ef.catenary()
        assert ef.catenary() <= ef.catenary_mon()
    assert ef.catenary() == ef.catenary_unionfind()
    # conductor submonoids: c <= 3, interval lengths, c_adj in {0, 3}
    assert ef.catenary() <= 3 and factor.is_interval(L) and ef.catenary_adj() in (0, 3)


@settings(max_examples=30)
@given(antichains, st.data())
def test_naive_enumeration_agrees(gens, data):
    M = IdealExtensionMonoid(gens)
    a = tuple(data.draw(st.integers(0, 7)) for _ in range(M.s))
    if not M.member_vector(a):
        return
    canon = {tuple(sorted(z.atoms)) for z in factor.factorizations(M, a)}
    assert factor.factorizations_naive(M, a) == canon


def test_F_iota_matches_oracle():
    for group in ("C2", "C3", "C2xC2"):
        ctx = ZeroSumContext.full(FiniteAbelianGroup.parse(group))
        M = FIotaMonoid(ctx)
        elems = [g.residues for g in ctx.support]
        B = BruteMonoid(oracles.f_iota_member(elems, ctx.group.cyclic_orders))
        for S in ctx.sequences(5):
            if not M.contains(S):
                continue
            got = {tuple(sorted(ctx.to_vector(u) for u in z.atoms)) for z in factor.factorizations(M, S)}
            want = {tuple(v for _, v in z) for z in B.factorizations((0, ctx.to_vector(S)))}
            assert got == want, str(S)
