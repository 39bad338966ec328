"""Tests for Hurwitz and periodic zeta values."""
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modreg.core.errors import PoleAtOne
from modreg.core.zeta_special import (
    ComplexValue,
    FractionModOne,
    IdentityCheck,
    bernoulli_numbers,
    bernoulli_poly,
    finite_fourier_relation_check,
    hurwitz_zeta,
    hurwitz_zeta_exact,
    periodic_zeta,
    periodic_zeta_exact,
    verify_hurwitz_formula,
    zeta_star_at_one,
)

fractions = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_bernoulli_numbers():
    assert bernoulli_numbers(4) == (1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30))


@given(fractions)
def test_bernoulli_poly_degree_two(x):
    assert bernoulli_poly(2, x) == x * x - x + Fraction(1, 6)


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=8), fractions)
def test_bernoulli_reflection(n, x):
    assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)


def test_fraction_mod_one():
    assert FractionModOne.of(-1, 5) == FractionModOne(4, 5)
    assert FractionModOne.of(5, 5) == FractionModOne(0, 1)
    assert -FractionModOne(1, 3) == FractionModOne(2, 3)
    with pytest.raises(ValueError):
        FractionModOne(2, 4)


def test_hurwitz_exact_values():
    # zeta(1, -1) = zeta(-1) = -1/12 and zeta(1, 0) = -1/2
    assert hurwitz_zeta_exact(FractionModOne(0), 2) == Fraction(-1, 12)
    assert hurwitz_zeta_exact(FractionModOne(0), 1) == Fraction(-1, 2)
    exact = hurwitz_zeta_exact(FractionModOne(1, 3), 3)
    assert hurwitz_zeta(FractionModOne(1, 3), -2).value == mpmath.mpf(exact.numerator) / exact.denominator


@pytest.mark.parametrize("s", [2.5, 0.5 + 3j, -1.5, 1 + 0.5j])
def test_hurwitz_against_mpmath(s):
    value = hurwitz_zeta(FractionModOne(1, 3), s)
    assert abs(value.value - mpmath.zeta(s, mpmath.mpf(1) / 3)) < 1e-25
    assert value.err < 1e-25


def test_hurwitz_pole():
    with pytest.raises(PoleAtOne):
        hurwitz_zeta(FractionModOne(1, 2), 1)


@pytest.mark.parametrize("method", ["split", "lerch", "auto"])
def test_periodic_zeta_is_polylog(method):
    value = periodic_zeta(FractionModOne(1, 4), 2, method=method)
    assert abs(value.value - mpmath.polylog(2, 1j)) < 1e-25


def test_periodic_zeta_reflection_branch():
    s = mpmath.mpc(0.5, 2)
    reflected = periodic_zeta(FractionModOne(2, 7), s, method="reflection")
    split = periodic_zeta(FractionModOne(2, 7), s, method="split")
    assert abs(reflected.value - split.value) < 1e-20


@pytest.mark.parametrize("x", [FractionModOne(1, 2), FractionModOne(1, 5), FractionModOne(2, 7)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_periodic_zeta_exact_matches_polylog(x, n):
    z = mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator)
    assert abs(periodic_zeta_exact(x, n).to_complex() - mpmath.polylog(1 - n, z)) < 1e-25


@pytest.mark.parametrize(
    "x,s",
    [
        (FractionModOne(1, 3), mpmath.mpc(0.5, 2)),
        (FractionModOne(2, 7), mpmath.mpc(0.5, 2)),
        (FractionModOne(1, 2), mpmath.mpc(0.5, 2)),
        (FractionModOne(1, 3), mpmath.mpc(2, 20)),
        (FractionModOne(3, 5), mpmath.mpc(-1.5, 0.5)),
        (FractionModOne(1, 4), mpmath.mpc(1.7, 0)),
    ],
)
@pytest.mark.parametrize("evaluate", [hurwitz_zeta, periodic_zeta])
def test_error_bound_covers_higher_precision(evaluate, x, s):
    with mpmath.workprec(106):
        coarse = evaluate(x, s)
    with mpmath.workprec(300):
        fine = evaluate(x, s)
        assert abs(coarse.value - fine.value) <= coarse.err + fine.err


def _partial_sum(x: FractionModOne, s: complex, periodic: bool, terms: int = 10**6) -> tuple[complex, float]:
    """Direct sum of the first ``terms`` terms and a bound on the rest."""
    if periodic:
        n = np.arange(1, terms + 1, dtype=np.float64)
        phases = np.exp(2j * np.pi * float(x.value) * n)
        start = terms
    else:
        n = float(x.value or 1) + np.arange(terms, dtype=np.float64)
        phases = 1.0
        start = float(x.value or 1) + terms - 1
    value = complex(np.sum(phases * n ** (-s)))
    tail = start ** (1 - s.real) / (s.real - 1)
    return value, tail + 1e-9


@pytest.mark.slow
@pytest.mark.parametrize("x", [FractionModOne(1, 3), FractionModOne(2, 7)])
@pytest.mark.parametrize("s", [2, 1.6 + 3j, 3 + 1j])
@pytest.mark.parametrize("periodic", [False, True])
def test_partial_sums_agree(x, s, periodic):
    value = (periodic_zeta if periodic else hurwitz_zeta)(x, s)
    partial, bound = _partial_sum(x, complex(s), periodic)
    assert abs(complex(value.value) - partial) <= float(value.err) + bound


def test_periodic_zeta_exact_at_one_half():
    assert periodic_zeta_exact(FractionModOne(1, 2), 1) == Fraction(-1, 2)


@pytest.mark.parametrize("numerator", range(1, 6))
@pytest.mark.parametrize("s", [2, 3, 1.5, 2 + 1j, 0.5 + 2j])
def test_hurwitz_functional_equation(numerator, s):
    check = verify_hurwitz_formula(FractionModOne(numerator, 7), s)
    assert check.residual < 1e-10


@pytest.mark.parametrize("N,u", [(3, 1), (5, 2), (5, 0)])
def test_finite_fourier_relations(N, u):
    for check in finite_fourier_relation_check(N, u, 2.5 + 1j):
        assert check.residual < 1e-10


def test_zeta_star_methods_agree():
    x = FractionModOne(1, 3)
    digamma = zeta_star_at_one(x, "digamma")
    stencil = zeta_star_at_one(x, "stencil")
    assert abs(digamma.value - stencil.value) < 1e-10
    # zeta*(0, 1) is Euler's constant
    assert abs(zeta_star_at_one(FractionModOne(0)).value - mpmath.euler) < 1e-25


def test_complex_value_error_propagation():
    product = ComplexValue(1, 0.1) * ComplexValue(2, 0.2)
    assert product.value == 2
    assert abs(product.err - 0.42) < 1e-15
    assert (ComplexValue(1, 0.1) - ComplexValue(1, 0.1)).err == pytest.approx(0.2)
    with pytest.raises(ValueError):
        ComplexValue(1, -1)


def test_identity_check_residual():
    check = IdentityCheck("example", ComplexValue(1 + 1j, 1e-3), ComplexValue(1, 2e-3))
    assert check.residual == pytest.approx(1.0)
    assert check.err == pytest.approx(3e-3)
