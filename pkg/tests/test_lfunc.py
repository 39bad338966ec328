"""Tests for completed L-functions of Eisenstein pairs."""
import mpmath
import pytest

from modreg.core.eisenstein import EisensteinSpec, Family, build_series, g_pair, h_pair
from modreg.core.errors import InvalidSpec, OutsideConvergence, PoleAt0, PoleAtK
from modreg.core.lfunc import (
    completed_lambda,
    dirichlet_L,
    functional_equation_check,
    lambda_H_closed_form,
    lambda_star,
    lambda_star_by_circle,
    pole_residue,
    rankin_integral_check,
)

T = 200


@pytest.mark.parametrize(
    "k,a,b,N,s",
    [(3, 1, 2, 5, 4), (1, 1, 1, 5, 2.5), (2, 1, 0, 3, 3), (3, 2, 0, 5, 1.5 + 1j)],
)
def test_lambda_of_H_matches_closed_form(k, a, b, N, s):
    pair = h_pair(k, a, b, N, T)
    value = completed_lambda(pair.f, pair.wf, pair.level, k, s)
    assert not value.regularized
    assert abs(value.value.value - lambda_H_closed_form(k, a, b, N, s).value) < 1e-8


@pytest.mark.parametrize(
    "make,k,a,b,N,s",
    [(g_pair, 1, 1, 2, 3, 0.5 + 0.5j), (g_pair, 3, 2, 1, 3, 1.2 + 0.3j), (h_pair, 2, 1, 0, 3, 0.7 + 1j)],
)
def test_functional_equation(make, k, a, b, N, s):
    check = functional_equation_check(make(k, a, b, N, T), s)
    assert check.residual < 1e-9


def test_pole_at_zero():
    pair = g_pair(1, 1, 0, 5, T)
    with pytest.raises(PoleAt0):
        completed_lambda(pair.f, pair.wf, pair.level, 1, 0)


def test_pole_at_k():
    pair = h_pair(3, 1, 2, 5, T)
    # W H = N i^-k G with G^(3)_{1,2} cuspidal at infinity, so s = k is regular
    completed_lambda(pair.f, pair.wf, pair.level, 3, 3)
    swapped = pair.swapped()
    with pytest.raises(PoleAtK):
        completed_lambda(swapped.f, swapped.wf, swapped.level, 3, 3)


def test_closed_form_poles():
    with pytest.raises(PoleAt0):
        lambda_H_closed_form(3, 1, 2, 5, 0)
    with pytest.raises(InvalidSpec):
        lambda_H_closed_form(2, 0, 1, 5, 3)


def test_regularized_value_agrees_with_circle_mean():
    pair = g_pair(3, 1, 0, 5, T)
    star = lambda_star(pair.f, pair.wf, pair.level, 3)
    assert star.regularized
    assert star.pole_subtractions[0][0] == "0"
    circle = lambda_star_by_circle(pair.f, pair.wf, pair.level, 3)
    assert abs(star.value.value - circle.value) < 1e-9


def test_residue_at_zero_is_minus_constant_term():
    pair = g_pair(3, 1, 0, 5, T)
    residue = pole_residue(pair.f, pair.wf, pair.level, 3)
    assert abs(residue.value + complex(pair.f.constant_term)) < 1e-9


def test_lambda_star_rejects_other_points():
    pair = g_pair(3, 1, 0, 5, T)
    with pytest.raises(InvalidSpec):
        lambda_star(pair.f, pair.wf, pair.level, 3, at="one")


def test_dirichlet_series_convergence_region():
    series = build_series(EisensteinSpec(Family.H, 3, 1, 2, 5), T)
    with pytest.raises(OutsideConvergence):
        dirichlet_L(series, 4)
    with pytest.raises(InvalidSpec):
        dirichlet_L(build_series(EisensteinSpec(Family.F, 3, 1, 2, 5), T), 8)


@pytest.mark.parametrize("k,a,b,N", [(1, 1, 2, 5), (2, 1, 1, 3)])
def test_dirichlet_series_of_H(k, a, b, N):
    s = mpmath.mpc(8)
    closed = lambda_H_closed_form(k, a, b, N, s)
    normalization = mpmath.power(N, s) * mpmath.power(2 * mpmath.pi, -s) * mpmath.gamma(s)
    value = dirichlet_L(build_series(EisensteinSpec(Family.H, k, a, b, N), T), s)
    assert abs(value.value - closed.value / normalization) < 1e-8


@pytest.mark.slow
def test_rankin_lemma():
    f = g_pair(1, 1, 0, 3, T)
    g = g_pair(1, 0, 1, 3, T)
    generic, regularized = rankin_integral_check(f, g, 1.5 + 0.5j)
    assert generic.residual < 1e-7
    assert regularized.residual < 1e-7


@pytest.mark.slow
def test_rankin_lemma_on_weight_one_and_two_combinations():
    f = h_pair(1, 1, 2, 5, T) + h_pair(1, 1, -2, 5, T)
    g = g_pair(2, 1, 3, 5, T) - g_pair(2, 1, 2, 5, T)
    generic, regularized = rankin_integral_check(f, g, 2)
    assert generic.residual < 1e-7
    assert regularized.residual < 1e-7
