import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from condmon.errors import InsufficientRank, SpecError
from condmon.group import FiniteAbelianGroup, add, independent_elements, neg, order_of


def G(text):
    return FiniteAbelianGroup.parse(text)


def test_add_examples():
    C4 = G("C4")
    assert add(C4.element((3,)), C4.element((2,))) == C4.element((1,))
    V = G("C2xC2")
    assert add(V.element((1, 0)), V.element((0, 1))) == V.element((1, 1))


def test_inverse_law_random():
    H = G("C6xC15")
    rng = random.Random(7)
    for _ in range(200):
        a = H.element((rng.randrange(6), rng.randrange(15)))
        assert (a + neg(a)).is_zero()


def test_order_examples():
    assert order_of(G("C7xC3").zero) == 1
    assert order_of(G("C6").element((2,))) == 3
    a = G("C2xC4").element((1, 1))
    # repeated addition until zero
    k, x = 1, a
    while not x.is_zero():
        x, k = x + a, k + 1
    assert order_of(a) == k == 4


def test_residues_are_reduced():
    assert G("C5").element((7,)) == G("C5").element((2,))
    assert G("C5").element((-1,)).residues == (4,)


def test_parse():
    assert str(G("c2xC4")) == "C2xC4"
    C3 = G("C3")
    assert C3.parse_element("g") == C3.element((1,))
    assert C3.parse_element("-g") == C3.element((2,))
    assert C3.parse_element("0").is_zero()
    with pytest.raises(SpecError):
        G("Z2")
    with pytest.raises(SpecError):
        G("C2xC2").parse_element("g")


def test_independent_elements():
    e = independent_elements(G("C2xC2xC2"), 2, 2)
    assert len(set(e)) == 2 and all(sum(x.residues) == 1 for x in e)
    e = independent_elements(G("C4xC4"), 2, 2)
    assert sorted(x.residues for x in e) == [(0, 2), (2, 0)]
    with pytest.raises(InsufficientRank):
        independent_elements(G("C3"), 2, 3)


@pytest.mark.parametrize("text,count,order", [("C2xC2xC2", 3, 2), ("C4xC4", 2, 2), ("C4xC4", 2, 4), ("C6xC3", 2, 3)])
def test_independence_exhaustive(text, count, order):
    H = G(text)
    e = independent_elements(H, count, order)
    assert all(order_of(x) == order for x in e)
    for coeffs in itertools.product(range(order), repeat=count):
        total = H.zero
        for c, x in zip(coeffs, e):
            total = total + x * c
        assert total.is_zero() == (not any(coeffs))


SMALL = [G(t) for t in ("C1", "C2", "C6", "C8", "C2xC2", "C2xC4", "C3xC3", "C2xC2xC2", "C4xC4xC2", "C16xC16")]


def test_order_divides_exponent_exhaustive():
    for H in SMALL:
        assert H.cardinality <= 256
        for a in H.enumerate_elements():
            assert H.exponent % order_of(a) == 0


group_and_triples = st.sampled_from(SMALL).flatmap(
    lambda H: st.tuples(
        st.just(H),
        *[st.tuples(*[st.integers(0, n - 1) for n in H.cyclic_orders]) for _ in range(3)],
    )
)


@given(group_and_triples)
def test_group_laws(data):
    H, x, y, z = data
    a, b, c = H.element(x), H.element(y), H.element(z)
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + H.zero == a
    assert (a - a).is_zero()


def test_enumeration_cap():
    with pytest.raises(Exception):
        list(G("C1000xC1000xC10").enumerate_elements(cap=1000))
