"""Tests for exact arithmetic in Q(zeta_n)."""
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modreg.core.cyclotomic import CyclotomicNumber, unit_fraction_ratio

small = st.integers(min_value=-5, max_value=5)


def elements(order: int):
    return st.lists(small, min_size=order, max_size=order).map(lambda c: CyclotomicNumber(order, c))


def test_roots_of_unity_sum_to_zero():
    for N in (3, 4, 5, 7):
        total = sum((CyclotomicNumber.root_of_unity(j, N) for j in range(N)), CyclotomicNumber(N, []))
        assert total.is_zero()


def test_root_of_unity_power():
    assert CyclotomicNumber.root_of_unity(1, 5) ** 5 == 1
    assert CyclotomicNumber.i_power(2) == -1
    assert CyclotomicNumber.gaussian(0, 1) == CyclotomicNumber.i_power(1)


def test_lift_embeds_subfield():
    assert CyclotomicNumber.root_of_unity(1, 3).lift(6) == CyclotomicNumber.root_of_unity(2, 6)
    with pytest.raises(ValueError):
        CyclotomicNumber.root_of_unity(1, 4).lift(6)


def test_unit_fraction_ratio_at_i():
    # (1 + i) / (1 - i) = i
    assert unit_fraction_ratio(1, 4) == CyclotomicNumber.i_power(1)
    with pytest.raises(ZeroDivisionError):
        unit_fraction_ratio(5, 5)


def test_rational_detection():
    minus_one = CyclotomicNumber.root_of_unity(1, 3) + CyclotomicNumber.root_of_unity(2, 3)
    assert minus_one.is_rational()
    assert minus_one.as_fraction() == Fraction(-1)
    with pytest.raises(ValueError):
        CyclotomicNumber.root_of_unity(1, 3).as_fraction()


@settings(max_examples=40)
@given(elements(5), elements(5), elements(5))
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x - x == 0


@settings(max_examples=30)
@given(elements(7))
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == 1


@settings(max_examples=30)
@given(elements(5))
def test_conjugate_matches_complex_conjugate(x):
    assert abs(x.conjugate().to_complex() - mpmath.conj(x.to_complex())) < mpmath.mpf(10) ** -25
