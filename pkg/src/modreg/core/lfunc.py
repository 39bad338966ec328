"""Dirichlet series, completed L-functions and their regularized values.

``Lambda(f, s) = M^(s/2) int_0^oo f*(i y) y^(s-1) dy`` is computed by splitting
the Mellin integral at ``y0 = M^(-1/2)`` and mapping the lower half onto the
Atkin-Lehner image ``W_M f``::

    Lambda(f, s) = M^(s/2) I_f(s) + M^((k-s)/2) I_Wf(k-s) - a0(f)/s - a0(Wf)/(k-s)

with ``I_g(z) = int_{y0}^oo g*(i y) y^(z-1) dy``.  Both pieces decay
exponentially, so the representation is valid for every complex s.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath

from .eisenstein import ModularPair
from .errors import InvalidSpec, OutsideConvergence, PoleAt0, PoleAtK, PoleError
from .qseries import FourierQSeries, qs_eval_fast, qs_star, series_envelope
from .quadrature import Envelope, integrate_decaying
from .zeta_special import ComplexValue, FractionModOne, IdentityCheck, periodic_zeta

logger = logging.getLogger(__name__)

DEFAULT_EPS = 1e-12


@dataclass(frozen=True)
class LambdaValue:
    value: ComplexValue
    s: complex
    regularized: bool = False
    pole_subtractions: list[tuple[str, complex]] = field(default_factory=list)


# -- Dirichlet series -------------------------------------------------------


def dirichlet_L(f: FourierQSeries, s, T: Optional[int] = None) -> ComplexValue:
    """``L(f, s) = sum_{n >= 1} a_n n^-s`` over the stored coefficients, with an integral tail bound.

    Coefficients are bounded by ``C n^(k - 1/2)`` with C read off the stored ones.
    """
    if f.denominator != 1:
        raise InvalidSpec("dirichlet_L needs a series in integral powers of q")
    s = mpmath.mpc(s)
    k = f.weight
    sigma = float(s.real)
    if sigma <= k + 1:
        raise OutsideConvergence(
            f"dirichlet_L is evaluated for Re(s) > k + 1 = {k + 1}",
            context={"s": str(s), "weight": k},
        )
    T = f.truncation if T is None else min(T, f.truncation)
    g = k - 0.5
    C = 0.0
    total = mpmath.mpc(0)
    for n, c in f.coeffs.items():
        if n == 0 or n >= T:
            continue
        value = mpmath.mpc(complex(c)) if not isinstance(c, mpmath.mpc) else c
        C = max(C, float(abs(value)) / n**g)
        total += value * mpmath.power(n, -s)
    tail = C * (T ** (g - sigma) + T ** (g - sigma + 1) / (sigma - g - 1))
    return ComplexValue(total, tail + 8 * mpmath.eps * (1 + abs(total)))


def required_truncation(denominator: int, y0: float, weight: float, threshold: float = 1e-20) -> int:
    """Smallest T with ``r0^T T^w < threshold`` for ``r0 = exp(-2 pi y0 / D)``."""
    log_r0 = -2 * math.pi * y0 / denominator
    T = 1
    while T * log_r0 + max(weight, 0) * math.log(T) >= math.log(threshold):
        T += 1
    return T


# -- split Mellin integrals -------------------------------------------------


def _a0(f: FourierQSeries) -> complex:
    return complex(mpmath.mpc(complex(f.constant_term))) if f.constant_term != 0 else 0j


def _half_line(f: FourierQSeries, z: complex, y0: float, eps: float) -> ComplexValue:
    """``I_f(z) = int_{y0}^oo f*(i y) y^(z-1) dy`` with the truncation error of f included."""
    star = qs_star(f)
    if star.is_zero():
        return ComplexValue(0, 0)
    needed = required_truncation(f.denominator, y0, f.weight)
    if f.truncation < needed:
        logger.warning(
            "truncation %d below the %d terms needed at y0=%.3g; the tail bound carries the difference",
            f.truncation, needed, y0,
        )
    A, lam = series_envelope(f, y0)
    envelope = Envelope(A, z.real - 1, lam)

    def integrand(y: float) -> complex:
        return qs_eval_fast(star, 1j * y) * y ** (z - 1)

    value = integrate_decaying(integrand, y0, envelope, eps)
    x0 = math.exp(-2 * math.pi * y0 / f.denominator)
    truncation = star.tail_bound(x0)
    if truncation:
        # (y/y0)^p <= exp(p (y - y0)/y0) for p >= 0
        rate = 2 * math.pi * f.truncation / f.denominator
        p = z.real - 1
        truncation *= y0**p / (rate - max(p, 0.0) / y0)
    return value + ComplexValue(0, truncation)


def _is(s: complex, point: float) -> bool:
    return abs(s - point) < 1e-14


def completed_lambda(
    f: FourierQSeries, wf: FourierQSeries, M: int, k: int, s, eps: float = DEFAULT_EPS
) -> LambdaValue:
    """``Lambda(f, s)`` for f of weight k on Gamma_0(M) with ``wf = W_M f``."""
    s = complex(s)
    a0, b0 = _a0(f), _a0(wf)
    if _is(s, 0) and a0 != 0:
        raise PoleAt0("Lambda(f, s) has a pole at s = 0", context={"a0": str(a0)})
    if _is(s, k) and b0 != 0:
        raise PoleAtK(f"Lambda(f, s) has a pole at s = k = {k}", context={"a0(Wf)": str(b0)})
    y0 = 1 / math.sqrt(M)
    upper = _half_line(f, s, y0, eps / 4).scale(mpmath.power(M, s / 2))
    lower = _half_line(wf, k - s, y0, eps / 4).scale(mpmath.power(M, (k - s) / 2))
    value = upper + lower
    subtractions = []
    if a0 != 0:
        value = value - mpmath.mpc(a0) / s
        subtractions.append(("0", a0))
    if b0 != 0:
        value = value - mpmath.mpc(b0) / (k - s)
        subtractions.append(("k", b0))
    logger.debug("Lambda at s=%s: %s", s, mpmath.nstr(value.value, 12))
    return LambdaValue(value, s, False, subtractions)


def lambda_star(
    f: FourierQSeries, wf: FourierQSeries, M: int, k: int, at: str = "zero", eps: float = DEFAULT_EPS
) -> LambdaValue:
    """The regularized value ``Lambda*(f, 0) = lim_{s->0} (Lambda(f, s) + a0(f)/s)``.

    ``Lambda*(f, k)`` is ``Lambda*(W f, 0)``.
    """
    if at == "k":
        swapped = lambda_star(wf, f, M, k, "zero", eps)
        return LambdaValue(swapped.value, complex(k), True, swapped.pole_subtractions)
    if at != "zero":
        raise InvalidSpec(f"regularized values exist at 'zero' and 'k', not {at!r}")
    a0, b0 = _a0(f), _a0(wf)
    y0 = 1 / math.sqrt(M)
    value = _half_line(f, 0j, y0, eps / 4) + _half_line(wf, complex(k), y0, eps / 4).scale(mpmath.power(M, k / 2))
    subtractions = [("0", a0)] if a0 != 0 else []
    if b0 != 0:
        value = value - mpmath.mpc(b0) / k
        subtractions.append(("k", b0))
    return LambdaValue(value, 0j, True, subtractions)


def lambda_star_by_circle(
    f: FourierQSeries, wf: FourierQSeries, M: int, k: int, radius: float = 0.25, points: int = 16
) -> ComplexValue:
    """``Lambda*(f, 0)`` as the mean of ``Lambda(f, s) + a0(f)/s`` over a circle around 0."""
    if radius >= k:
        raise InvalidSpec("the circle must not reach the pole at s = k")
    a0 = _a0(f)
    total = ComplexValue(0, 0)
    for j in range(points):
        s = radius * complex(mpmath.expjpi(2 * mpmath.mpf(j) / points))
        total = total + completed_lambda(f, wf, M, k, s).value + mpmath.mpc(a0) / s
    error = (radius / k) ** points
    return ComplexValue(total.value / points, total.err / points + error)


def pole_residue(
    f: FourierQSeries, wf: FourierQSeries, M: int, k: int, at: str = "zero", radius: float = 0.25, points: int = 16
) -> ComplexValue:
    """Residue of ``Lambda(f, s)`` at 0 (or k), ``1/(2 i pi) oint Lambda ds`` on a small circle."""
    centre = 0.0 if at == "zero" else float(k)
    total = ComplexValue(0, 0)
    for j in range(points):
        offset = radius * complex(mpmath.expjpi(2 * mpmath.mpf(j) / points))
        total = total + completed_lambda(f, wf, M, k, centre + offset).value.scale(offset)
    return ComplexValue(total.value / points, total.err / points + (radius / max(k, 1)) ** points)


def functional_equation_check(pair: ModularPair, s, eps: float = DEFAULT_EPS) -> IdentityCheck:
    """``Lambda(f, s) = Lambda(W f, k - s)``."""
    s = complex(s)
    lhs = completed_lambda(pair.f, pair.wf, pair.level, pair.weight, s, eps).value
    rhs = completed_lambda(pair.wf, pair.f, pair.level, pair.weight, pair.weight - s, eps).value
    return IdentityCheck("functional equation of Lambda", lhs, rhs)


# -- closed form for H ------------------------------------------------------


def lambda_H_closed_form(k: int, a: int, b: int, N: int, s) -> ComplexValue:
    """``Lambda(H^(k)_{a,b}, s) = N^s (2 pi)^-s Gamma(s)
    (zhat(-a/N, s) zhat(-b/N, s-k+1) + (-1)^k zhat(a/N, s) zhat(b/N, s-k+1))``."""
    if k == 2 and a % N == 0:
        raise InvalidSpec("the closed form for H^(2)_{a,b} needs a != 0")
    s = mpmath.mpc(s)
    if s.imag == 0 and s.real <= 0 and s.real == mpmath.floor(s.real):
        if s == 0:
            raise PoleAt0("Gamma(s) has a pole at s = 0")
        raise PoleError("Gamma(s) has a pole at a nonpositive integer", context={"s": str(s)})
    if b % N == 0 and s - k + 1 == 1:
        raise PoleAtK(f"zhat(0, s-k+1) has a pole at s = k = {k}")
    x_a, x_b = FractionModOne.of(a, N), FractionModOne.of(b, N)
    first = periodic_zeta(-x_a, s) * periodic_zeta(-x_b, s - k + 1)
    second = periodic_zeta(x_a, s) * periodic_zeta(x_b, s - k + 1)
    total = first + second.scale((-1) ** k)
    return total.scale(mpmath.power(N, s) * mpmath.power(2 * mpmath.pi, -s) * mpmath.gamma(s))


# -- Rankin-type integral ---------------------------------------------------


def _envelope_for(f: FourierQSeries, y0: float) -> tuple[float, float, float]:
    A, lam = series_envelope(f, y0)
    return A, lam, abs(_a0(f))


def rankin_integral_check(
    f: ModularPair, g: ModularPair, s, eps: float = 1e-10
) -> tuple[IdentityCheck, IdentityCheck]:
    """The Rankin-type lemma at s and its regularized variant at s = k.

    ``M^(s/2) int_0^oo f*(i y) g*(i/(M y)) y^(s-1) dy
      = Lambda(f h, s+l) - a0 Lambda(h, s+l) - b0 Lambda(f, s)``
    with ``h = W g``, ``a0 = a0(f)`` and ``b0 = a0(g)``; at s = k the right-hand
    side uses ``Lambda*(f h, k+l)`` and ``Lambda*(f, k)``.
    """
    if f.level != g.level:
        raise InvalidSpec("the Rankin lemma needs forms of the same level")
    M, k, l = f.level, f.weight, g.weight
    product = f * g.swapped()
    generic = IdentityCheck(
        "rankin integral",
        _rankin_lhs(f, g, complex(s), eps),
        _rankin_rhs(f, g, product, complex(s), eps, regularized=False),
    )
    regularized = IdentityCheck(
        "rankin integral at s=k",
        _rankin_lhs(f, g, complex(k), eps),
        _rankin_rhs(f, g, product, complex(k), eps, regularized=True),
    )
    logger.info("rankin residuals: %.3g, %.3g (level %d, weights %d, %d)", generic.residual, regularized.residual, M, k, l)
    return generic, regularized


def _rankin_lhs(f: ModularPair, g: ModularPair, s: complex, eps: float) -> ComplexValue:
    M, k, l = f.level, f.weight, g.weight
    y0 = 1 / math.sqrt(M)
    a0, b0 = _a0(f.f), _a0(g.f)
    f_star, g_star = qs_star(f.f), qs_star(g.f)
    h, wf = g.wf, f.wf
    if f_star.is_zero() or g_star.is_zero():
        return ComplexValue(0, 0)
    sigma = s.real
    root_l, root_k = M ** (l / 2), M ** (k / 2)

    def upper(y: float) -> complex:
        return qs_eval_fast(f_star, 1j * y) * (root_l * y**l * qs_eval_fast(h, 1j * y) - b0) * y ** (s - 1)

    def lower(t: float) -> complex:
        return (root_k * t**k * qs_eval_fast(wf, 1j * t) - a0) * qs_eval_fast(g_star, 1j * t) * t ** (-s - 1)

    A_f, lam_f, _ = _envelope_for(f.f, y0)
    A_h, _, c_h = _envelope_for(h, y0)
    A_g, lam_g, _ = _envelope_for(g.f, y0)
    A_wf, _, c_wf = _envelope_for(wf, y0)
    upper_env = Envelope(A_f * (root_l * (c_h + A_h) + abs(b0) * y0 ** (-l)), l + sigma - 1, lam_f)
    lower_env = Envelope(A_g * (root_k * (c_wf + A_wf) + abs(a0) * y0 ** (-k)), k - sigma - 1, lam_g)
    top = integrate_decaying(upper, y0, upper_env, eps / 4)
    bottom = integrate_decaying(lower, y0, lower_env, eps / 4)
    return (top + bottom.scale(mpmath.power(M, -s))).scale(mpmath.power(M, s / 2))


def _rankin_rhs(
    f: ModularPair, g: ModularPair, product: ModularPair, s: complex, eps: float, regularized: bool
) -> ComplexValue:
    M, k, l = f.level, f.weight, g.weight
    a0, b0 = _a0(f.f), _a0(g.f)
    h = g.swapped()
    if regularized:
        fh = lambda_star(product.f, product.wf, M, k + l, "k", eps).value
        f_value = lambda_star(f.f, f.wf, M, k, "k", eps).value if b0 else ComplexValue(0, 0)
    else:
        fh = completed_lambda(product.f, product.wf, M, k + l, s + l, eps).value
        f_value = completed_lambda(f.f, f.wf, M, k, s, eps).value if b0 else ComplexValue(0, 0)
    h_value = completed_lambda(h.f, h.wf, M, l, s + l, eps).value if a0 else ComplexValue(0, 0)
    return fh - h_value.scale(mpmath.mpc(a0)) - f_value.scale(mpmath.mpc(b0))
