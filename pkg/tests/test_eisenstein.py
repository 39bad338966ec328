"""Tests for the Eisenstein catalog."""
import itertools
from fractions import Fraction

import mpmath
import pytest

from modreg.core.errors import InvalidSpec, NonConvergent
from modreg.core.eisenstein import (
    EisensteinSpec,
    Family,
    atkin_lehner_numeric,
    build_series,
    constant_term,
    dft_bridge_residual,
    g_pair,
    h_pair,
    kronecker_lattice_value,
    lattice_value,
    quasi_periodicity_phase,
    slash_check_F,
)
from modreg.core.qseries import qs_eval
from modreg.core.zeta_special import IdentityCheck


@pytest.mark.parametrize(
    "family,k,a,b,N",
    [("G", 2, 0, 1, 5), ("F", 2, 0, 0, 5), ("H", 2, 0, 0, 3), ("G", 3, 1, 1, 2), ("E", 0, 1, 1, 5)],
)
def test_invalid_specs(family, k, a, b, N):
    with pytest.raises(InvalidSpec):
        EisensteinSpec(family, k, a, b, N)


def test_labels_reduce_mod_N():
    spec = EisensteinSpec(Family.G, 3, -1, 7, 5)
    assert (spec.a, spec.b) == (4, 2)
    assert spec.level == 25 and spec.denominator == 1
    assert EisensteinSpec(Family.E, 3, 1, 1, 5).denominator == 5


def test_constant_terms():
    assert constant_term(EisensteinSpec(Family.G, 1, 0, 2, 5)) == Fraction(1, 10)
    assert constant_term(EisensteinSpec(Family.G, 1, 1, 2, 5)) == 0
    assert constant_term(EisensteinSpec(Family.H, 1, 0, 0, 5)) == 0
    # F^(k)_{a,b} has constant zeta(a/N, 1-k) = -B_k({a/N})/k
    assert constant_term(EisensteinSpec(Family.F, 3, 0, 1, 5)) == 0
    assert constant_term(EisensteinSpec(Family.F, 2, 1, 0, 3)) == -Fraction(1, 2) * (Fraction(1, 9) - Fraction(1, 3) + Fraction(1, 6))


@pytest.mark.parametrize("family", list(Family))
def test_series_constant_is_the_table_value(family):
    for k, a, b in ((1, 1, 2), (3, 0, 1), (4, 2, 0)):
        spec = EisensteinSpec(family, k, a, b, 5)
        assert build_series(spec, 20).constant_term == constant_term(spec)


def test_weight_two_E_is_quasi_modular():
    series = build_series(EisensteinSpec(Family.E, 2, 1, 0, 5), 20)
    assert series.quasi_modular_correction == Fraction(1, 4)
    assert build_series(EisensteinSpec(Family.E, 3, 1, 0, 5), 20).quasi_modular_correction == 0


@pytest.mark.parametrize("inverse", [False, True])
@pytest.mark.parametrize("k,N", [(1, 3), (2, 5), (3, 5), (4, 3)])
def test_dft_bridge_is_exact(k, N, inverse):
    for a, b in itertools.product(range(N), repeat=2):
        if k == 2 and a == 0:
            continue
        assert dft_bridge_residual(k, a, b, N, 30, inverse=inverse).is_zero()


@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("a,b", [(1, 0), (1, 2), (2, 3)])
def test_atkin_lehner_image_of_G(k, a, b):
    N = 5
    pair = g_pair(k, a, b, N, 200)
    for tau in (mpmath.mpc(0, 1) / N, mpmath.mpc(0.1, 0.9) / N, mpmath.mpc(-0.2, 1.1) / N):
        check = IdentityCheck("W G", atkin_lehner_numeric(pair.f, N * N, k, tau), qs_eval(pair.wf, tau))
        assert check.residual < 1e-8


def test_W_is_an_involution_on_pairs():
    pair = h_pair(3, 1, 2, 5, 200)
    tau = mpmath.mpc(0.05, 0.21)
    twice = atkin_lehner_numeric(lambda z: atkin_lehner_numeric(pair.f, 25, 3, z), 25, 3, tau)
    assert abs(twice.value - qs_eval(pair.f, tau).value) < 1e-8


def test_weight_two_H_needs_a_modular_partner():
    with pytest.raises(InvalidSpec, match="W-partner"):
        h_pair(2, 0, 1, 3, 20)
    with pytest.raises(InvalidSpec, match="W-partner"):
        h_pair(2, 5, 2, 5, 20)
    assert h_pair(2, 1, 0, 3, 20).weight == 2


def test_pairs_of_different_weight_do_not_add():
    with pytest.raises(InvalidSpec):
        g_pair(1, 1, 0, 5, 20) + g_pair(2, 1, 0, 5, 20)
    product = g_pair(1, 1, 0, 5, 20) * g_pair(2, 1, 1, 5, 20)
    assert product.weight == 3 and product.level == 25


@pytest.mark.parametrize("k", [1, 3, 4])
@pytest.mark.parametrize("g", [((0, -1), (1, 0)), ((2, 1), (1, 1)), ((1, 0), (3, 1))])
def test_slash_action_on_F(k, g):
    difference = slash_check_F(k, 1, 2, 5, g, mpmath.mpc(0.1, 0.9))
    assert abs(difference) < 1e-8


def test_slash_needs_determinant_one():
    with pytest.raises(InvalidSpec):
        slash_check_F(3, 1, 2, 5, ((2, 0), (0, 1)), mpmath.mpc(0, 1))


@pytest.mark.parametrize("family", [Family.E, Family.F])
@pytest.mark.parametrize("k", [3, 4])
def test_q_expansion_matches_lattice_sum(family, k):
    tau = mpmath.mpc(0.1, 0.9)
    spec = EisensteinSpec(family, k, 1, 2, 5)
    check = IdentityCheck("lattice", qs_eval(build_series(spec, 200), tau), lattice_value(spec, tau))
    assert check.residual < 1e-7


def test_kronecker_needs_weight_three():
    with pytest.raises(NonConvergent):
        kronecker_lattice_value(2, mpmath.mpc(0, 1), mpmath.mpc(0.1, 0.1))


@pytest.mark.parametrize("lam", [(1, 0), (0, 1), (1, 1)])
def test_kronecker_quasi_periodicity(lam):
    tau = mpmath.mpc(0.15, 1.1)
    z = mpmath.mpc(0.13, 0.07)
    u = (Fraction(1, 5), Fraction(2, 5))
    shifted = kronecker_lattice_value(3, tau, z + lam[0] + lam[1] * tau, u)
    base = kronecker_lattice_value(3, tau, z, u)
    assert abs(shifted.value - base.value * quasi_periodicity_phase(tau, lam, u)) < 1e-8
