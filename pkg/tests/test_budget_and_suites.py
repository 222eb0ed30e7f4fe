import pytest

from condmon import suites
from condmon.budget import ENV_SCALE, Budget, default_budget


def test_defaults():
    b = Budget()
    assert (b.factorization_cap, b.sequence_length, b.dense_limit) == (100_000, 12, 2000)


def test_env_scale(monkeypatch):
    monkeypatch.setenv(ENV_SCALE, "0.5")
    b = default_budget()
    assert b.factorization_cap == 50_000 and b.sequence_length == 6
    monkeypatch.setenv(ENV_SCALE, "2")
    assert default_budget(factorization_cap=10).factorization_cap == 20
    monkeypatch.setenv(ENV_SCALE, "fast")
    with pytest.raises(ValueError):
        default_budget()


def test_scale_must_be_positive():
    with pytest.raises(ValueError):
        Budget().scaled(0)


def test_suite_result_never_passes_vacuously():
    r = suites.SuiteResult("empty")
    assert not r.ok
    r.check(True, "fine")
    assert r.ok
    r.check(False, lambda: "broken at (2,2)")
    assert not r.ok and r.to_json()["first_failure"] == "broken at (2,2)"


def test_suite_result_merge():
    a, b = suites.SuiteResult("a"), suites.SuiteResult("b")
    a.check(True, "")
    a.bump("x")
    b.check(False, "bad")
    b.bump("x", 2)
    a.merge(b)
    assert a.assertions == 2 and a.counts == {"x": 3} and not a.ok


def test_random_monoids_are_seeded():
    first = [m.generators for m in suites.random_monoids(10, 42)]
    assert first == [m.generators for m in suites.random_monoids(10, 42)]
    assert {m.s for m in suites.random_monoids(9, 0)} == {1, 2, 3}
    assert all(max(max(g) for g in m.generators) <= 4 for m in suites.random_monoids(30, 1))


def test_suite_registry():
    assert {"thm3.8", "thm5.1", "cor5.3", "thm4.5", "thm5.5", "prop4.6", "lemma3.4"} <= set(suites.SUITES)


def test_consistency_checker_catches_a_bad_engine(monkeypatch):
    from condmon import factor

    tally = suites.ConsistencyChecker()
    real = factor.factorizations_naive
    monkeypatch.setattr(factor, "factorizations_naive", lambda o, a: real(o, a) | {("bogus",)})
    suites.suite_cor53(ms=(3,), tally=tally)
    assert not tally.result.ok
    assert "naive and canonical" in tally.result.failures[0]
