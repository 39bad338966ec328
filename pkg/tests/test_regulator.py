"""Tests for the regulator terms, the main formula and the integral before the swap."""
import itertools

import mpmath
import numpy as np
import pytest

from modreg.core.eisenstein import evaluate_F
from modreg.core.errors import ConvergenceViolation, InvalidSpec, OutsideStrip
from modreg.core.regulator import (
    TERMS,
    FCombination,
    RegulatorInput,
    cancellation_residuals,
    half_regulator_A,
    mellin_F_combination_closed,
    mellin_F_combination_quadrature,
    pre_swap_integral_check,
    random_admissible_input,
    term_B,
    term_D,
    theorem_both_sides,
)
from modreg.core.zeta_special import ZERO


def test_input_validation():
    with pytest.raises(InvalidSpec):
        RegulatorInput(0, 1, 2, (1, 1), (1, 1))
    with pytest.raises(InvalidSpec):
        RegulatorInput(0, 1, 5, (0, 0), (1, 1))
    with pytest.raises(InvalidSpec):
        RegulatorInput(1, 0, 5, (2, 0), (1, 1))
    with pytest.raises(InvalidSpec):
        RegulatorInput(-1, 0, 5, (1, 1), (1, 1))


def test_input_labels_and_swap():
    inp = RegulatorInput(2, 1, 5, (-1, 7), (3, 1))
    assert inp.u1 == (4, 2)
    assert (inp.a1, inp.b1, inp.a2, inp.b2) == (4, 2, 3, 1)
    assert inp.k == 3
    swapped = inp.swapped()
    assert (swapped.k1, swapped.k2, swapped.u1, swapped.u2) == (1, 2, (3, 1), (4, 2))
    assert inp.as_dict() == {"k1": 2, "k2": 1, "N": 5, "u1": [4, 2], "u2": [3, 1]}


def test_random_inputs_are_admissible():
    rng = np.random.default_rng(0)
    for _ in range(20):
        inp = random_admissible_input(1, 1, 3, rng)
        assert inp.b1 != 0 and inp.b2 != 0


@pytest.mark.parametrize("k1,k2,N", [(0, 0, 3), (0, 1, 5), (1, 2, 7), (2, 0, 5), (0, 3, 3), (2, 2, 5)])
def test_cancellations(k1, k2, N):
    rng = np.random.default_rng(k1 * 100 + k2 * 10 + N)
    for _ in range(3):
        inp = random_admissible_input(k1, k2, N, rng)
        terms = {name: term(inp) for name, term in TERMS.items()}
        for name, residual in cancellation_residuals(inp, terms).items():
            assert residual < 1e-8, (str(inp), name)


def test_exact_zero_terms():
    rng = np.random.default_rng(1)
    for k2, N in itertools.product((1, 2, 3), (3, 5)):
        inp = random_admissible_input(1, k2, N, rng)
        assert term_B(inp) is ZERO
        if k2 % 2 == 0:
            assert term_D(inp) is ZERO


def test_half_regulator_vanishes_without_a2():
    inp = RegulatorInput(1, 1, 5, (2, 1), (0, 3))
    assert half_regulator_A(inp).value == 0


@pytest.mark.parametrize("inp", [RegulatorInput(0, 0, 3, (1, 0), (1, 1)), RegulatorInput(1, 0, 5, (2, 1), (1, 3))])
def test_main_formula(inp):
    report = theorem_both_sides(inp)
    assert report.theorem_check.residual < 1e-7
    assert set(report.terms) == {"A", "B", "C", "D", "E", "F"}
    assert report.to_dict()["input"] == inp.as_dict()


def test_antisymmetry_needs_swapped_report():
    report = theorem_both_sides(RegulatorInput(0, 0, 3, (1, 0), (1, 1)))
    with pytest.raises(InvalidSpec):
        report.antisymmetry_check()


@pytest.mark.slow
def test_antisymmetry():
    report = theorem_both_sides(RegulatorInput(0, 1, 5, (1, 2), (2, 3)), with_swapped=True)
    assert report.antisymmetry_check().residual < 1e-7
    assert "swapped" in report.to_dict()


@pytest.mark.parametrize("k,a,b", [(0, 1, 2), (1, 1, 2), (2, 3, 1)])
def test_f_combination_pieces_agree_at_one(k, a, b):
    phi = FCombination(k, a, b, 5)
    assert abs(phi.direct_value(1.0) - phi.inverted_value(1.0)) < 1e-10


@pytest.mark.parametrize("k,a,b", [(0, 1, 2), (1, 2, 0)])
@pytest.mark.parametrize("y", [1.3, 0.7])
def test_f_combination_is_F_plus_conjugate(k, a, b, y):
    phi = FCombination(k, a, b, 5)
    value = evaluate_F(k + 2, -a, -b, 5, mpmath.mpc(0, y), 200).value
    expected = complex(value + (-1) ** (k + 1) * mpmath.conj(value))
    assert abs(phi(y) - expected) < 1e-9


@pytest.mark.parametrize("k,s", [(0, -1.5), (1, -2.5 + 0.5j)])
def test_mellin_transform_of_f_combination(k, s):
    closed = mellin_F_combination_closed(k, 1, 2, 5, s)
    numeric = mellin_F_combination_quadrature(k, 1, 2, 5, s)
    assert abs(closed.value - numeric.value) < 1e-8


def test_convergence_regions():
    with pytest.raises(OutsideStrip):
        mellin_F_combination_closed(0, 1, 2, 5, 0.5)
    with pytest.raises(OutsideStrip):
        mellin_F_combination_quadrature(0, 1, 2, 5, 0)
    with pytest.raises(ConvergenceViolation):
        pre_swap_integral_check(RegulatorInput(0, 0, 5, (1, 2), (2, 1)), -3)


@pytest.mark.slow
def test_pre_swap_integral():
    check = pre_swap_integral_check(RegulatorInput(0, 0, 5, (1, 2), (2, 1)), -6.0)
    assert check.residual < 1e-6
