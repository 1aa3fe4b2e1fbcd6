from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from compalg.scalars import (
    DeltaPoly,
    NotDivisible,
    divide_linear,
    format_rational,
    parse_rational,
)


def test_rational_round_trip():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-5") == Fraction(-5)
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(7)) == "7"


def test_eval_at_known_points():
    d = DeltaPoly.delta()
    assert (d - 7)(7) == 0
    assert (-d + 1)(7) == -6
    assert (d - 4)(3) == -1
    assert (d - 4)(7) == 3


def test_divide_linear_round_trip():
    d = DeltaPoly.delta()
    p = (d - 7) * (d + 2) * 3
    q = p.divide_linear(7)
    assert q == (d + 2) * 3
    assert q * (d - 7) == p


def test_divide_linear_rejects_nonroot():
    d = DeltaPoly.delta()
    with pytest.raises(NotDivisible):
        (d - 7).divide_linear(3)
    # functional form agrees
    assert divide_linear((d - 7) * (d - 3), 3) == d - 7


def test_json_round_trip():
    d = DeltaPoly.delta()
    p = d * d - Fraction(7, 2) * d + 1
    assert DeltaPoly.from_json(p.to_json()) == p


def test_zero_handling():
    z = DeltaPoly.zero()
    assert z.is_zero()
    assert not z
    assert z.degree == -1
    assert z + z == 0
    assert DeltaPoly.delta() * 0 == z


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=10)
polys = st.lists(rationals, max_size=4).map(lambda cs: DeltaPoly(cs))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)


@given(polys, polys, st.integers(-10, 10))
def test_eval_is_ring_map(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(polys, st.integers(-5, 5))
def test_divide_linear_inverts_multiplication(p, root):
    d = DeltaPoly.delta()
    prod = p * (d - root)
    assert prod.divide_linear(root) == p
