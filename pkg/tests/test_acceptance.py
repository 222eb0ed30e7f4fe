"""Exit criteria 1-13, each with its time limit.

Every test records one PASS/FAIL line (shown in the terminal summary and
printed with ``-s``); the assertion then fails the test if the line is FAIL.
"""
import time

import pytest

from condmon import factor, suites
from condmon.constructions import equal_catenary_bounded_exponent
from condmon.zerosum import FIotaMonoid

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance


def record(n: int, ok: bool, elapsed: float, limit: float | None, detail: str) -> None:
    within = limit is None or elapsed <= limit
    verdict = "PASS" if ok and within else "FAIL"
    budget = f"{elapsed:.1f}s" + (f" / {limit:.0f}s" if limit is not None else "")
    line = f"criterion {n}: {verdict} [{budget}] {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, f"{line} (over the time limit)"


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def sweep():
    return timed(suites.suite_thm51)


def test_criterion_01_catenary_at_most_3(sweep):
    r, dt = sweep
    random_monoids = r.counts["monoids"] - 3
    ok = r.ok and random_monoids >= 50 and r.counts.get("skipped_over_budget", 0) == 0
    record(1, ok, dt, 60, f"{random_monoids} random monoids, {r.counts['elements']} elements, c <= 3 and L an interval")


def test_criterion_02_c_adj_in_0_3(sweep):
    r, dt = sweep
    adj3 = r.counts["c_adj_equal_3"]
    ok = r.ok and adj3 > 0 and not any("c_adj" in f for f in r.failures)
    record(2, ok, dt, 60, f"c_adj in {{0,3}} everywhere, {adj3} elements with c_adj = 3")


def test_criterion_03_cycle_monoids():
    r, dt = timed(suites.suite_cor53, (3, 4, 5))
    ceq = [r.counts[f"c_eq_m{m}"] for m in (3, 4, 5)]
    record(3, r.ok, dt, 30, f"two length-m factorizations at distance m, c_eq = {ceq}")


def test_criterion_04_gap_absorbing_iff_conductor():
    r, dt = timed(suites.suite_thm38, window=6, negative=True)
    ok = r.ok and r.counts.get("negative_cases") == 1 and "witness" in r.counts
    record(4, ok, dt, 30, f"{r.counts['monoids']} monoids absorb gaps; diagonal fails with {r.counts.get('witness')}")


def test_criterion_05_atom_heredity_and_gap_quotients():
    r, dt = timed(suites.suite_lemma34, window=6, monoids=20)
    record(5, r.ok, dt, 30, f"{r.counts['monoids']} monoids, {r.counts.get('non_minimal_atoms', 0)} non-minimal atoms checked")


def test_criterion_06_class_semigroup():
    r, dt = timed(suites.suite_thm35, monoids=20)
    record(6, r.ok, dt, 30, f"{r.counts['monoids']} monoids, up to {r.counts['max_classes']} classes, stable at alpha+1")


def test_criterion_07_davenport():
    r, dt = timed(suites.suite_prop46)
    values = {k: v for k, v in r.counts.items() if k.startswith("D(")}
    expected = {f"D(C{n})": n for n in range(1, 9)} | {"D(C2xC2)": 3}
    record(7, r.ok and values == expected, dt, 20, "D(C_n) = n for n <= 8, D(C2xC2) = 3 by brute force and DFS")


def test_criterion_08_transfer():
    r, dt = timed(suites.suite_thm45, window=6)
    ok = r.ok and r.counts["instances"] == 10
    record(8, ok, dt, 60, f"(T1)+(T2) on 10 instances, fibre catenary <= 2 on {r.counts['elements']} elements")


def test_criterion_09_interval_length_sets():
    r, dt = timed(suites.suite_thm55, parts=(1,))
    record(9, r.ok, dt, 120, f"{r.counts['sequences']} verified sequences, {r.counts.get('group_too_small', 0)} GroupTooSmall, every [k,l] covered")


def test_criterion_10_two_factorizations_C2_4():
    t0 = time.perf_counter()
    inst = equal_catenary_bounded_exponent(2, 2)
    ef = factor.analyze(FIotaMonoid(inst.context), inst.element)
    layer = [z for z in ef.factorizations() if len(z) == 3]
    dt = time.perf_counter() - t0
    ok = len(layer) == 2 and factor.distance(*layer) == 3 and ef.catenary_eq() >= 3
    record(10, ok, dt, 60, f"{len(layer)} length-3 factorizations at distance 3 among {len(ef)}, c_eq = {ef.catenary_eq()}")


def test_criterion_11_no_primes_not_half_factorial():
    r, dt = timed(suites.suite_thm55, parts=(0,))
    record(11, r.ok, dt, 30, f"{r.counts['atoms']} atoms with non-primeness witnesses; non-half-factorial witnesses for C2, C3")


def test_criterion_12_power_primary():
    r, dt = timed(suites.suite_ex39)
    growth = [r.counts[f"max_U2_box{b}"] for b in (6, 8, 10, 12)]
    ok = r.ok and r.counts["max_c_power_primary_1"] == 2
    record(12, ok, dt, 30, f"half-factorial with max c = 2; max U_2 over boxes 6..12 = {growth}")


def test_criterion_13_engine_self_consistency():
    tally = suites.ConsistencyChecker()
    t0 = time.perf_counter()
    runs = [
        suites.suite_thm51(tally=tally),
        suites.suite_cor53(tally=tally),
        suites.suite_prop46(tally=tally),
        suites.suite_thm45(tally=tally),
        suites.suite_thm55(tally=tally),
        suites.suite_ex39(tally=tally),
    ]
    dt = time.perf_counter() - t0
    c = tally.result
    ok = c.ok and all(r.ok for r in runs)
    detail = f"{c.counts['elements']} elements, {c.assertions} checks"
    if c.failures:
        detail += f"; first failure: {c.failures[0]}"
    record(13, ok, dt, None, detail)
