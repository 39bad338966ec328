"""Tests for the real-analytic Eisenstein series."""
import mpmath
import pytest

from modreg.core.errors import InvalidSpec, NonConvergent
from modreg.core.real_analytic import (
    RealAnalyticSpec,
    RealAnalyticVariant,
    fab_eab_check,
    fourier_expansion_check,
    real_analytic_eval,
    real_analytic_fourier_eval,
)

TAU = mpmath.mpc(0.15, 1.1)


@pytest.mark.parametrize("variant", list(RealAnalyticVariant))
@pytest.mark.parametrize("a,b,u1,u2,N", [(1, 0, 1, 2, 3), (0, 2, 0, 1, 5), (2, 1, 2, 0, 3), (1, 1, 0, 0, 5)])
def test_fourier_expansion_matches_lattice_sum(variant, a, b, u1, u2, N):
    check = fourier_expansion_check(RealAnalyticSpec(a, b, u1, u2, N, variant), TAU)
    assert check.residual < 1e-7


def test_weight_two_is_not_absolutely_convergent():
    with pytest.raises(NonConvergent):
        real_analytic_fourier_eval(RealAnalyticSpec(0, 0, 1, 1, 5), TAU)


def test_lattice_sum_needs_upper_half_plane():
    spec = RealAnalyticSpec(1, 0, 1, 2, 3)
    with pytest.raises(InvalidSpec):
        real_analytic_eval(spec, mpmath.mpc(0.1, -1))
    with pytest.raises(NonConvergent):
        real_analytic_eval(RealAnalyticSpec(0, 0, 1, 1, 5), TAU)


def test_spec_validation():
    with pytest.raises(InvalidSpec):
        RealAnalyticSpec(-1, 0, 0, 0, 5)
    spec = RealAnalyticSpec(2, 1, 7, -1, 5, "F")
    assert (spec.u1, spec.u2) == (2, 4)
    assert spec.variant is RealAnalyticVariant.F_SERIES
    assert spec.swapped().a == 1 and spec.swapped().b == 2


@pytest.mark.slow
def test_F_is_the_finite_fourier_transform_of_E():
    check = fab_eab_check(RealAnalyticSpec(1, 0, 1, 2, 3, RealAnalyticVariant.F_SERIES), TAU)
    assert check.residual < 1e-7
