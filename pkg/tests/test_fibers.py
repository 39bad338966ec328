"""Tests for the fibre integrals of psi-forms."""
import pytest

from modreg.core.cyclotomic import CyclotomicNumber
from modreg.core.errors import InvalidSpec
from modreg.core.fibers import (
    RightForm,
    fiber_integral_psi,
    fiber_lemma_cases,
    fiber_lemma_value,
    omega_fiber_integral,
    omega_form,
    pullback_psi,
)


def test_lemma_cases_up_to_weight_four():
    for label, computed, expected in fiber_lemma_cases(4):
        assert computed == expected, label


@pytest.mark.slow
def test_lemma_cases_up_to_weight_six():
    for label, computed, expected in fiber_lemma_cases(6):
        assert computed == expected, label


def test_one_forms():
    assert pullback_psi(1, 0).integrate() == CyclotomicNumber.i_power(1)
    assert pullback_psi(0, 1).integrate() == CyclotomicNumber.i_power(-1)


def test_wedge_anticommutes_on_one_forms():
    x, y = pullback_psi(1, 0, 0), pullback_psi(0, 1, 1)
    left = (x ^ y).as_dict()
    right = (y ^ x).as_dict()
    assert left.keys() == right.keys() == {(0, 1)}
    assert left[(0, 1)] == -right[(0, 1)]


def test_wedge_of_repeated_coordinate_vanishes():
    x = pullback_psi(1, 0, 0)
    assert (x ^ x).as_dict() == {}


def test_integral_at_weight_two():
    computed = fiber_integral_psi(1, 1, 1, RightForm.PSI_K2_0)
    assert computed == fiber_lemma_value(1, 1, 1, RightForm.PSI_K2_0)
    assert computed.y_power == 2


def test_omega_vanishes_below_top_index():
    assert omega_fiber_integral(2, 1, 0).is_zero()
    assert omega_fiber_integral(2, 1, 1).is_zero()
    top = omega_fiber_integral(2, 1, 2)
    assert not top.is_zero()
    assert (top.y_power, top.four_pi_over_N_power) == (1, 3)


@pytest.mark.parametrize(
    "call",
    [
        lambda: pullback_psi(-1, 0),
        lambda: omega_form(2, 3),
        lambda: fiber_integral_psi(2, 1, 3),
        lambda: fiber_integral_psi(-1, 1, 0),
        lambda: pullback_psi(1, 0, 1).integrate(),
    ],
)
def test_invalid_arguments(call):
    with pytest.raises(InvalidSpec):
        call()
