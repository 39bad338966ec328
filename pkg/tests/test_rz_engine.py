"""Tests for double series S and the swap of Mellin-type integrals."""
import numpy as np
import pytest

from modreg.core.errors import InvalidSpec, OutsideStrip
from modreg.core.rz_engine import (
    ArithmeticFunctionModN,
    DoubleSeriesSpec,
    S_at,
    S_eval,
    S_fast,
    delta_fn,
    dft,
    hat_delta_fn,
    mellin_S_closed,
    mellin_S_quadrature,
    random_arithmetic_function,
    rz_swap_bruteforce,
    rz_swap_check,
    swap_side_integral,
)


@pytest.mark.parametrize("N", [3, 4, 5, 7])
def test_dft_sends_delta_to_hat_delta(N):
    for u in range(N):
        assert all(x == y for x, y in zip(dft(delta_fn(u, N)).values, hat_delta_fn(u, N).values))


def test_functions_must_share_modulus():
    with pytest.raises(InvalidSpec):
        DoubleSeriesSpec(0, 0, delta_fn(1, 3), delta_fn(1, 5))
    with pytest.raises(InvalidSpec):
        delta_fn(1, 3) + delta_fn(1, 5)
    with pytest.raises(InvalidSpec):
        ArithmeticFunctionModN(3, (1, 0))


def test_fast_evaluation_agrees():
    spec = DoubleSeriesSpec(1, 0, hat_delta_fn(1, 5), delta_fn(2, 5))
    for y in (0.3, 1.0, 2.5):
        exact = S_at(spec, 1j * y).value
        assert abs(exact - S_fast(spec, y)) < 1e-10 * (1 + abs(exact))


def test_S_eval_inverts_the_argument():
    spec = DoubleSeriesSpec(0, 1, delta_fn(1, 5), hat_delta_fn(3, 5))
    assert S_eval(spec, 0.5, inverted=True).value == S_at(spec, 2j).value
    assert S_eval(spec, 2.0).value == S_at(spec, 2j).value
    with pytest.raises(InvalidSpec):
        S_eval(spec, 0.0)


def test_first_evaluation_high_in_the_half_plane():
    spec = DoubleSeriesSpec(2, 1, delta_fn(1, 7), hat_delta_fn(3, 7))
    value = S_at(spec, 3j)
    assert len(spec.coefficients(16)) == 17
    fresh = DoubleSeriesSpec(2, 1, delta_fn(1, 7), hat_delta_fn(3, 7))
    assert abs(S_fast(fresh, 3.0) - value.value) < 1e-10 * (1 + abs(value.value))


def test_coefficients_match_requested_length_after_regrowth():
    spec = DoubleSeriesSpec(1, 0, hat_delta_fn(1, 5), delta_fn(2, 5))
    assert len(spec.coefficients(10)) == 11
    assert len(spec.coefficients(100)) == 101
    assert len(spec.coefficients(130)) == 131
    assert len(spec.coefficients(5)) == 6
    small = S_at(spec, 0.2j)
    large = S_at(spec, 4j)
    assert abs(S_fast(spec, 0.2) - small.value) < 1e-10 * (1 + abs(small.value))
    assert abs(S_fast(spec, 4.0) - large.value) < 1e-10 * (1 + abs(large.value))


def test_zero_series():
    spec = DoubleSeriesSpec(0, 0, ArithmeticFunctionModN.zero(3), delta_fn(1, 3))
    assert spec.is_zero()
    assert S_at(spec, 1j).value == 0


@pytest.mark.parametrize("t,u,s", [(0, 0, 3.0), (1, 0, 3.5 + 0.5j), (0, 1, 4.0)])
def test_mellin_transform_closed_form(t, u, s):
    spec = DoubleSeriesSpec(t, u, delta_fn(1, 5), hat_delta_fn(2, 5))
    closed = mellin_S_closed(spec, s)
    numeric = mellin_S_quadrature(spec, s)
    assert abs(closed.value - numeric.value) < 1e-8


def test_mellin_transform_outside_strip():
    spec = DoubleSeriesSpec(1, 0, delta_fn(1, 5), delta_fn(2, 5))
    with pytest.raises(OutsideStrip):
        mellin_S_closed(spec, 1.5)
    with pytest.raises(OutsideStrip):
        mellin_S_quadrature(spec, 2.0)


@pytest.mark.parametrize("draw", range(4))
def test_swap_on_random_inputs(draw):
    rng = np.random.default_rng(draw)
    N = int(rng.choice([3, 4, 5, 7]))
    t1, u1, t2, u2 = (int(x) for x in rng.integers(0, 3, size=4))
    s = complex(round(float(rng.uniform(-1, 1)), 3), round(float(rng.uniform(-0.5, 0.5)), 3))
    functions = [random_arithmetic_function(N, rng) for _ in range(4)]
    check = rz_swap_check(t1, u1, t2, u2, *functions, s, eps=1e-10)
    assert check.residual < 1e-7


def test_swap_with_negative_exponent():
    N = 5
    check = rz_swap_check(
        -1, 3, 0, 0,
        hat_delta_fn(1, N) + hat_delta_fn(4, N),
        delta_fn(2, N),
        hat_delta_fn(3, N),
        delta_fn(1, N) - delta_fn(4, N),
        2 + 1j,
    )
    assert check.residual < 1e-7


@pytest.mark.slow
def test_swap_integral_against_bessel_sum():
    inverted = DoubleSeriesSpec(0, 0, delta_fn(1, 3), delta_fn(1, 3))
    straight = DoubleSeriesSpec(0, 0, delta_fn(1, 3), delta_fn(2, 3))
    quadrature = swap_side_integral(inverted, straight, 0, eps=1e-12)
    oracle = rz_swap_bruteforce(inverted, straight, 0)
    assert abs(quadrature.value - oracle.value) < 1e-10


def test_bessel_sum_needs_common_level():
    with pytest.raises(InvalidSpec):
        rz_swap_bruteforce(
            DoubleSeriesSpec(0, 0, delta_fn(1, 3), delta_fn(1, 3)),
            DoubleSeriesSpec(0, 0, delta_fn(1, 5), delta_fn(1, 5)),
            0,
        )
