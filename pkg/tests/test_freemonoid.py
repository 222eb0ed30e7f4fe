import itertools
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condmon import freemonoid as fm
from condmon.errors import DimensionMismatch, WindowTooLarge


def test_divides_examples():
    assert fm.divides((0, 0), (3, 7))
    assert not fm.divides((1, 2), (2, 1))
    assert fm.divides((1, 1), (3, 3))


def test_length_examples():
    assert fm.length((0, 0, 0)) == 0
    assert fm.length((1, 2)) == 3


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fm.divides((1,), (1, 2))


def test_dickson_min_examples():
    assert fm.dickson_min([]) == set()
    assert fm.dickson_min([(1, 2), (2, 1), (2, 2)]) == {(1, 2), (2, 1)}


def test_dickson_min_random_against_pairwise_oracle():
    rng = random.Random(11)
    for _ in range(5):
        S = {(rng.randint(0, 9), rng.randint(0, 9)) for _ in range(500)}
        M = fm.dickson_min(S)
        expected = {a for a in S if not any(b != a and fm.divides(b, a) for b in S)}
        assert M == expected
        assert all(not fm.divides(a, b) for a in M for b in M if a != b)
        assert all(any(fm.divides(m, a) for m in M) for a in S)


vec = st.lists(st.integers(0, 6), min_size=3, max_size=3).map(tuple)


@given(vec, vec)
def test_divides_iff_subtract(a, b):
    assert fm.divides(a, b) == (fm.checked_subtract(b, a) is not None)
    assert fm.length(fm.add(a, b)) == fm.length(a) + fm.length(b)


@given(st.sets(vec, max_size=30))
def test_dickson_min_idempotent(S):
    M = fm.dickson_min(S)
    assert fm.dickson_min(M) == M


@given(st.lists(st.integers(0, 4), min_size=1, max_size=3).map(tuple))
def test_divisor_enumeration(a):
    ds = list(fm.divisor_enumeration(a))
    assert len(ds) == math.prod(x + 1 for x in a)
    assert ds == sorted(ds)
    assert all(fm.divides(d, a) for d in ds)


def test_divisor_enumeration_length_12():
    for a in [(12,), (6, 6), (4, 4, 4), (3, 3, 3, 3)]:
        ds = list(fm.divisor_enumeration(a))
        assert len(ds) == math.prod(x + 1 for x in a) == len(set(ds))


def test_box():
    box = fm.Box((2, 3))
    assert box.size == 12
    assert list(box) == list(itertools.product(range(3), range(4)))
    with pytest.raises(WindowTooLarge):
        fm.Box((99, 99, 99, 99)).check(cap=1000)


def test_parse_format_roundtrip():
    assert fm.parse_vector("(3, 0,2)") == (3, 0, 2)
    assert fm.format_vector((3, 0, 2)) == "(3,0,2)"
