"""Theorem suites: exhaustive checks on finite windows.

Each suite returns a :class:`SuiteResult` that counts every assertion it
made. A suite with zero assertions is reported as failed, so nothing passes
vacuously. Randomness comes from a seeded :class:`random.Random`.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import factor, kernels
from . import freemonoid as fm
from .budget import Budget, default_budget
from .conductor import (
    IdealExtensionMonoid,
    VectorSubmonoid,
    conductor_condition,
    diagonal_monoid,
    ideal_condition,
)
from .constructions import (
    cycle_monoid,
    equal_catenary_bounded_exponent,
    non_half_factorial_witness,
    power_primary_monoid,
    thm55_interval_witness,
)
from .errors import BudgetExceeded, GroupTooSmall
from .group import FiniteAbelianGroup
from .zerosum import (
    FIotaMonoid,
    FPhiMonoid,
    LabeledPrimes,
    ZeroSumContext,
    davenport,
    davenport_brute_force,
    fiber_catenary_check,
    global_atoms_F_iota,
    in_F_iota,
    in_F_phi,
    is_zero_sum,
    transfer_check,
)

GROUP_MENU = ("C2", "C3", "C5", "C8", "C2xC2", "C2xC2xC2", "C3xC3")


@dataclass
class SuiteResult:
    name: str
    assertions: int = 0
    failures: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.assertions > 0 and not self.failures

    def check(self, cond: bool, message: Callable[[], str] | str) -> bool:
        self.assertions += 1
        if not cond:
            self.failures.append(message() if callable(message) else message)
        return cond

    def bump(self, key: str, by: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + by

    def merge(self, other: SuiteResult) -> None:
        self.assertions += other.assertions
        self.failures.extend(other.failures)
        for k, v in other.counts.items():
            self.bump(k, v)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "assertions": self.assertions,
            "counts": dict(sorted(self.counts.items())),
            "first_failure": self.failures[0] if self.failures else None,
            "failures": len(self.failures),
        }


# ------------------------------------------------------------------------------
# engine self-consistency


@dataclass
class ConsistencyChecker:
    """Cross-checks run on every factorized element when enabled.

    Triangle inequalities are checked on all triples up to ``triangle_limit``
    factorizations; above it, on every triple through the first row.
    """

    result: SuiteResult = field(default_factory=lambda: SuiteResult("engine-consistency"))
    triangle_limit: int = 300

    def __call__(self, oracle, ef: factor.ElementFactorizations) -> None:
        r = self.result
        a = ef.element
        r.bump("elements")
        naive = factor.factorizations_naive(oracle, a)
        canon = {tuple(sorted(z.atoms)) for z in ef.factorizations()}
        r.check(len(canon) == len(ef.rows), lambda: f"duplicate factorizations at {a}")
        r.check(naive == canon, lambda: f"naive and canonical enumeration differ at {a}")
        n = len(ef)
        if n < 2:
            return
        D = ef._matrix() if ef.dense else None
        if D is None:
            return
        lens = ef.lengths
        r.check(bool((D == D.T).all()), lambda: f"distance not symmetric at {a}")
        r.check(bool((np.diag(D) == 0).all()), lambda: f"nonzero self-distance at {a}")
        off = ~np.eye(n, dtype=bool)
        r.check(bool((D[off] > 0).all()), lambda: f"distinct factorizations at distance 0 at {a}")
        gap = np.abs(lens[:, None] - lens[None, :])
        r.check(bool((D[off] >= 2 + gap[off]).all()), lambda: f"d(z,z') < 2 + ||z|-|z'|| at {a}")
        if n <= self.triangle_limit:
            via = (D[:, :, None] + D[None, :, :]).min(axis=1)
            r.check(bool((D <= via).all()), lambda: f"triangle inequality fails at {a}")
            r.bump("triangle_elements")
        else:
            r.check(bool((D <= D[:, :1] + D[:1, :]).all()), lambda: f"triangle inequality fails at {a}")
        L = ef.length_set()
        c = ef.catenary()
        max_gap = max((y - x for x, y in zip(L, L[1:])), default=0)
        r.check(2 + max_gap <= c, lambda: f"2 + max gap of L exceeds c at {a}")
        r.check(ef.catenary_unionfind() == c, lambda: f"bottleneck tree and union-find disagree at {a}")
        # a spot check that the kernel matches the multiset distance
        z = ef.factorizations()
        r.check(factor.distance(z[0], z[-1]) == int(D[0, n - 1]), lambda: f"kernel distance disagrees at {a}")


def _analyze(engine_or_oracle, a, tally: ConsistencyChecker | None, oracle=None):
    ef = factor.analyze(engine_or_oracle, a)
    if tally is not None:
        tally(oracle if oracle is not None else engine_or_oracle, ef)
    return ef


# ------------------------------------------------------------------------------
# random monoids


def random_ideal_monoid(rng: random.Random, s: int, max_coord: int = 4, max_gens: int = 3) -> IdealExtensionMonoid:
    while True:
        k = rng.randint(1, max_gens)
        pts = set()
        for _ in range(k):
            v = tuple(rng.randint(0, max_coord) for _ in range(s))
            if any(v):
                pts.add(v)
        if pts:
            return IdealExtensionMonoid(sorted(fm.dickson_min(pts)))


def random_monoids(count: int, seed: int, dims=(1, 2, 3), max_coord: int = 4) -> list[IdealExtensionMonoid]:
    rng = random.Random(seed)
    return [random_ideal_monoid(rng, dims[i % len(dims)], max_coord) for i in range(count)]


def _window_members(H, window):
    for v in itertools.product(*(range(u + 1) for u in window)):
        if H.member_vector(v):
            yield v


# ------------------------------------------------------------------------------
# suites


def suite_thm51(
    monoids: int = 50,
    window: int = 8,
    seed: int = 0,
    cap: int = 10_000,
    families: str = "default",
    tally: ConsistencyChecker | None = None,
) -> SuiteResult:
    """c(a) <= 3, L(a) an interval and c_adj(a) in {0, 3} on every window element."""
    r = SuiteResult("thm5.1")
    budget = default_budget(factorization_cap=cap)
    Hs = random_monoids(monoids, seed)
    if families == "default":
        Hs = [IdealExtensionMonoid([(1, 1)]), IdealExtensionMonoid([(2, 2)]), cycle_monoid(3)] + Hs
    adj3 = 0
    for H in Hs:
        r.bump("monoids")
        top = (window,) * H.s if H.s <= 3 else (1,) * H.s
        eng = factor.FactorizationEngine(H, top, budget)
        for v in _window_members(H, top):
            try:
                ef = _analyze(eng, v, tally, H)
            except BudgetExceeded:
                r.bump("skipped_over_budget")
                L = eng.length_set(v)
                r.check(factor.is_interval(L), lambda: f"{H!r}: L{v} = {L} is not an interval")
                continue
            r.bump("elements")
            L = ef.length_set()
            c = ef.catenary()
            c_adj = ef.catenary_adj()
            r.check(c <= 3, lambda: f"{H!r}: c{v} = {c} > 3")
            r.check(factor.is_interval(L), lambda: f"{H!r}: L{v} = {L} is not an interval")
            r.check(c_adj in (0, 3), lambda: f"{H!r}: c_adj{v} = {c_adj}")
            adj3 += c_adj == 3
    r.counts["c_adj_equal_3"] = adj3
    r.check(adj3 > 0, "no element with c_adj = 3 was found")
    return r


def suite_cor53(ms=(3, 4, 5), tally: ConsistencyChecker | None = None) -> SuiteResult:
    """Cycle monoids: two perfect matchings of the 2m-cycle give c_eq >= m."""
    r = SuiteResult("cor5.3")
    for m in ms:
        H = cycle_monoid(m)
        a = (1,) * (2 * m)
        ef = _analyze(H, a, tally)
        layer = [z for z in ef.factorizations() if len(z) == m]
        r.bump("elements")
        r.check(len(layer) == 2, lambda: f"m={m}: {len(layer)} factorizations of length m")
        if len(layer) == 2:
            d = factor.distance(*layer)
            r.check(d == m, lambda: f"m={m}: distance {d}")
            gens = {H.element(g) for g in H.generators}
            r.check(all(set(z.atoms) <= gens for z in layer), lambda: f"m={m}: layer uses non-edge atoms")
        ceq = ef.catenary_eq()
        r.check(ceq >= m, lambda: f"m={m}: c_eq = {ceq} < m")
        r.counts[f"c_eq_m{m}"] = ceq
        two = {H.element(v) for v in H.atom_vectors_dividing((2,) * (2 * m)) if sum(v) == 2}
        r.check(two == {H.element(g) for g in H.generators}, lambda: f"m={m}: length-2 atoms differ from generators")
    return r


def suite_thm38(window: int = 6, monoids: int = 20, seed: int = 1, negative: bool = False, positive: bool = True) -> SuiteResult:
    """Generated ideal extensions are gap absorbing; the diagonal is not."""
    r = SuiteResult("thm3.8")
    if positive:
        Hs = [IdealExtensionMonoid([(1, 1)]), IdealExtensionMonoid([(2, 2)])] + random_monoids(monoids, seed)
        for H in Hs:
            box = fm.Box((window,) * H.s)
            res = H.is_gap_absorbing(box)
            r.bump("monoids")
            r.bump("gap_atom_pairs", res.checked)
            r.check(res.ok, lambda: f"{H!r} is not gap absorbing: {res.witness}")
            r.check(ideal_condition(H.member_vector, box) and conductor_condition(H.member_vector, box),
                    lambda: f"{H!r}: ideal/conductor conditions disagree")
    if negative or not positive:
        D = diagonal_monoid(2)
        box = fm.Box((window, window))
        res = D.is_gap_absorbing(box)
        r.bump("negative_cases")
        r.check(not res.ok, "diagonal monoid passed the gap-absorbing test")
        if res.witness is not None:
            g, u, w = res.witness
            r.check(not D.contains(g) and D.is_atom(u), "witness is not a (gap, atom) pair")
            A = fm.atom_mask(fm.member_array(box, D.contains))
            in_AA = any(
                A[x] and A[tuple(p - q for p, q in zip(w, x))]
                for x in fm.divisor_enumeration(w)
                if all(p >= q for p, q in zip(w, x))
            )
            r.check(not D.is_atom(w) and not in_AA, f"witness {w} lies in A or A+A")
            r.counts["witness"] = f"{fm.format_vector(g)}+{fm.format_vector(u)}={fm.format_vector(w)}"
        r.check(not ideal_condition(D.contains, box), "diagonal satisfies the ideal condition")
    return r


def suite_lemma34(window: int = 6, monoids: int = 20, seed: int = 2) -> SuiteResult:
    """Atom divisors stay atoms; non-minimal atoms are gap + minimal element."""
    r = SuiteResult("lemma3.4")
    for H in random_monoids(monoids, seed):
        r.bump("monoids")
        box = fm.Box((window,) * H.s)
        M = fm.member_array(box, H.member_vector)
        A = fm.atom_mask(M)
        nz = M.copy()
        nz[(0,) * H.s] = False
        shape = M.shape
        for sv in fm.box_enumeration(box):
            if not any(sv):
                continue
            hi = tuple(slice(x, n) for x, n in zip(sv, shape))
            lo = tuple(slice(0, n - x) for x, n in zip(sv, shape))
            bad = A[hi] & nz[lo] & ~A[lo]
            r.check(not bad.any(), lambda: f"{H!r}: s={sv} breaks atom heredity")
        mins = H.minimal_elements()
        r.check(all(H.is_atom(m) for m in mins), lambda: f"{H!r}: a minimal element is not an atom")
        for a in fm.vectors_of(A):
            if a in mins:
                continue
            r.bump("non_minimal_atoms")
            ok = False
            for m in mins:
                g = fm.checked_subtract(a, m)
                if g is not None and any(g) and not H.member_vector(g):
                    ok = True
                    break
            r.check(ok, lambda: f"{H!r}: atom {a} has no gap quotient in M(H)")
    return r


def suite_thm35(monoids: int = 20, seed: int = 3) -> SuiteResult:
    """Finite class semigroup, stable under a larger cap, and the alpha criterion."""
    r = SuiteResult("thm3.5")
    for H in random_monoids(monoids, seed):
        r.bump("monoids")
        alpha = H.cmonoid_alpha()
        cs = H.class_semigroup()
        cs1 = H.class_semigroup(alpha + 1)
        r.check(cs.size == cs1.size, lambda: f"{H!r}: {cs.size} classes at cap {alpha}, {cs1.size} at {alpha + 1}")
        unc = H.class_count_uncapped()
        r.check(unc == cs.size, lambda: f"{H!r}: uncapped comparison gives {unc} classes, capped {cs.size}")
        ok, checks = H.cmonoid_criterion(alpha)
        r.bump("criterion_checks", checks)
        r.check(ok and checks > 0, lambda: f"{H!r}: alpha criterion fails")
        r.counts.setdefault("max_classes", 0)
        r.counts["max_classes"] = max(r.counts["max_classes"], cs.size)
    return r


def suite_prop46(tally: ConsistencyChecker | None = None) -> SuiteResult:
    """Davenport constants by two routes, and the global atoms of F_iota."""
    r = SuiteResult("prop4.6")
    groups = [FiniteAbelianGroup((n,)) for n in range(1, 9)] + [FiniteAbelianGroup((2, 2))]
    for G in groups:
        ctx = ZeroSumContext.full(G)
        d_dfs = davenport(ctx)
        d_brute = davenport_brute_force(ctx)
        expected = G.cardinality if G.rank == 1 else 3
        r.check(d_dfs == d_brute == expected, lambda: f"D({G}): dfs {d_dfs}, brute {d_brute}, expected {expected}")
        r.counts[f"D({G})"] = d_dfs
    for text in ("C1", "C2", "C3", "C2xC2"):
        G = FiniteAbelianGroup.parse(text)
        ga = global_atoms_F_iota(ZeroSumContext.full(G))
        r.check(bool(ga.atoms) and max(len(A) for A in ga.atoms) <= ga.length_bound,
                lambda: f"{G}: atom longer than the bound")
        r.counts[f"atoms_F_iota({G})"] = len(ga.atoms)
    return r


def labeled_instances() -> list[LabeledPrimes]:
    C2, C3, K = (FiniteAbelianGroup.parse(t) for t in ("C2", "C3", "C2xC2"))
    g2, g3, h3 = C2.element((1,)), C3.element((1,)), C3.element((2,))
    e1, e2, e12 = K.element((1, 0)), K.element((0, 1)), K.element((1, 1))
    return [
        LabeledPrimes(C2, {"p": C2.zero, "q": g2}),
        LabeledPrimes(C2, {"p": g2, "q": g2}),
        LabeledPrimes(C2, {"p1": g2, "p2": g2, "q": C2.zero}),
        LabeledPrimes(C3, {"p": g3, "q": h3}),
        LabeledPrimes(C3, {"p": g3, "q": g3, "r": h3}),
        LabeledPrimes(C3, {"p": g3}),
        LabeledPrimes(C3, {"o": C3.zero, "p": g3, "q": h3}),
        LabeledPrimes(K, {"a": e1, "b": e2, "c": e12}),
        LabeledPrimes(K, {"a": e1, "b": e2, "c": e12, "d": e1}),
        LabeledPrimes(K, {"o": K.zero, "a": e1, "b": e2}),
    ]


def suite_thm45(window: int = 6, tally: ConsistencyChecker | None = None) -> SuiteResult:
    """beta* is a transfer homomorphism with fibre catenary degree <= 2."""
    r = SuiteResult("thm4.5")
    for lp in labeled_instances():
        r.bump("instances")
        rep = transfer_check(lp, window)
        r.bump("splits_checked", rep.splits_checked)
        r.check(rep.ok, lambda: f"{lp!r}: {rep.witness}")
        H = FPhiMonoid(lp)
        for n in range(window + 1):
            for combo in itertools.combinations_with_replacement(range(len(lp.primes)), n):
                v = [0] * len(lp.primes)
                for i in combo:
                    v[i] += 1
                a = tuple(v)
                r.check(in_F_phi(lp, a) == H.contains(a), "F_phi membership routes disagree")
                if not H.contains(a):
                    continue
                if tally is not None:
                    _analyze(H, a, tally)
                fc = fiber_catenary_check(lp, a)
                r.bump("elements")
                r.check(fc <= 2, lambda: f"{lp!r}: fibre catenary degree {fc} at {lp.format(a)}")
    return r


def suite_thm55(menu=GROUP_MENU, max_ell: int = 7, tally: ConsistencyChecker | None = None, parts=(1, 3, 0)) -> SuiteResult:
    """Interval length sets, the two-factorization instance, and the prime-free preamble."""
    r = SuiteResult("thm5.5")
    if 1 in parts:
        realized: dict = {}
        for text in menu:
            G = FiniteAbelianGroup.parse(text)
            for k in range(2, max_ell):
                for ell in range(k + 1, max_ell + 1):
                    try:
                        w = thm55_interval_witness(G, k, ell)
                    except GroupTooSmall:
                        r.bump("group_too_small")
                        continue
                    r.bump("sequences")
                    H = FIotaMonoid(ZeroSumContext(G, w.sequence.support))
                    L = factor.length_set(H, w.sequence)
                    if tally is not None:
                        _analyze(H, w.sequence, tally)
                    r.check(L == list(range(k, ell + 1)), lambda: f"{G} [{k},{ell}]: {w.sequence} has L = {L}")
                    realized.setdefault((k, ell), []).append(text)
        for k in range(2, max_ell):
            for ell in range(k + 1, max_ell + 1):
                r.check((k, ell) in realized, lambda: f"[{k},{ell}] is realized by no group in the menu")
    if 3 in parts:
        inst = equal_catenary_bounded_exponent(2, 2)
        H = FIotaMonoid(inst.context)
        ef = _analyze(H, inst.element, tally)
        layer = [z for z in ef.factorizations() if len(z) == 3]
        r.check(len(layer) == 2, f"C2^4 instance has {len(layer)} factorizations of length 3")
        r.check(len(layer) == 2 and factor.distance(*layer) == 3, "C2^4 instance: distance is not 3")
        r.check(ef.catenary_eq() >= 3, "C2^4 instance: c_eq < 3")
        r.counts["part3_Z_count"] = len(ef)
    if 0 in parts:
        for text in ("C2", "C3"):
            G = FiniteAbelianGroup.parse(text)
            ctx = ZeroSumContext.full(G)
            H = FIotaMonoid(ctx)
            domain = H.domain(10)
            atoms = [A for A in global_atoms_F_iota(ctx).atoms if len(A) <= 5]
            for u in atoms:
                r.bump("atoms")
                w = factor.primality_witness(H, u, domain)
                ok = w is not None
                if ok:
                    a, b = w
                    ok = (
                        H.contains(a)
                        and H.contains(b)
                        and H.divides_in_monoid(u, a * b)
                        and not H.divides_in_monoid(u, a)
                        and not H.divides_in_monoid(u, b)
                    )
                r.check(ok, lambda: f"{G}: atom {u} has no non-primeness witness")
            hf, wit = factor.is_half_factorial_within(H, domain)
            r.check(not hf and wit is not None, f"{G}: F_iota looks half-factorial")
            S = non_half_factorial_witness(ctx)
            L = factor.length_set(H, S)
            r.check(2 in L and 3 in L, lambda: f"{G}: {S} has L = {L}")
            if tally is not None:
                _analyze(H, S, tally)
    return r


def suite_ex39(tally: ConsistencyChecker | None = None, boxes=(6, 8, 10, 12)) -> SuiteResult:
    """Half-factorial power-primary case, and growing unions U_2 for (2,2)."""
    r = SuiteResult("ex3.9")
    C2 = FiniteAbelianGroup.parse("C2")
    H = power_primary_monoid((1,), C2)
    max_c = 0
    for n in range(11):
        for unit in C2.enumerate_elements():
            a = H.element((unit, (n,)))
            if not H.contains(a):
                continue
            ef = _analyze(H, a, tally)
            L = ef.length_set()
            r.check(len(L) == 1, lambda: f"L({a}) = {L} is not a singleton")
            max_c = max(max_c, ef.catenary())
    r.check(max_c == 2, f"max catenary degree {max_c}, expected 2")
    r.counts["max_c_power_primary_1"] = max_c
    K = power_primary_monoid((2, 2))
    prev = None
    for b in boxes:
        dom = list(_window_members(K, (b, b)))
        eng = factor.FactorizationEngine(K, (b, b))
        out = set()
        for v in dom:
            L = eng.length_set(v)
            if 2 in L:
                out.update(L)
        top = max(out)
        r.counts[f"max_U2_box{b}"] = top
        if prev is not None:
            r.check(top > prev, f"U_2 did not grow from box {b - 2} to {b}")
        prev = top
        if b == 12:
            r.check(set(range(2, 7)) <= out, f"U_2 on box (12,12) is {sorted(out)}")
    if tally is not None:
        eng = factor.FactorizationEngine(K, (8, 8))
        for v in _window_members(K, (8, 8)):
            _analyze(eng, v, tally, K)
    return r


SUITES = {
    "thm5.1": suite_thm51,
    "cor5.3": suite_cor53,
    "thm3.8": suite_thm38,
    "lemma3.4": suite_lemma34,
    "thm3.5": suite_thm35,
    "prop4.6": suite_prop46,
    "thm4.5": suite_thm45,
    "thm5.5": suite_thm55,
    "ex3.9": suite_ex39,
}
