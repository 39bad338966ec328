"""Real-analytic Eisenstein series E^{a,b}_u and F^{a,b}_u.

``E^{a,b}_u(tau) = sum'_{(m,n) = u mod N} (m tau + n)^-(a+1) (m conj(tau) + n)^-(b+1)``
and ``F^{a,b}_u(tau) = sum'_{(m,n)} zeta_N^(m u1 + n u2) (m tau + n)^-(a+1) (m conj(tau) + n)^-(b+1)``.

Lattice values sum each row in closed form (partial fractions into polygamma
row sums); the slowly decaying part of the rows is removed by subtracting the
row integral, whose sum over all rows is a Hurwitz (or periodic) zeta value.
The Fourier evaluation goes through the double series of ``rz_engine``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import mpmath

from .cyclotomic import CyclotomicNumber
from .eisenstein import row_sum
from .errors import InvalidSpec, NonConvergent
from .rz_engine import ArithmeticFunctionModN, DoubleSeriesSpec, S_at, delta_fn, hat_delta_fn
from .zeta_special import ComplexValue, FractionModOne, IdentityCheck, hurwitz_zeta, periodic_zeta

logger = logging.getLogger(__name__)


class RealAnalyticVariant(str, Enum):
    E_SERIES = "E"
    F_SERIES = "F"


@dataclass(frozen=True)
class RealAnalyticSpec:
    a: int
    b: int
    u1: int
    u2: int
    N: int
    variant: RealAnalyticVariant = RealAnalyticVariant.E_SERIES

    def __post_init__(self):
        object.__setattr__(self, "variant", RealAnalyticVariant(self.variant))
        if self.a < 0 or self.b < 0:
            raise InvalidSpec("the exponents a, b must be nonnegative", context={"a": self.a, "b": self.b})
        if self.N < 1:
            raise InvalidSpec("N must be positive")
        object.__setattr__(self, "u1", self.u1 % self.N)
        object.__setattr__(self, "u2", self.u2 % self.N)

    @property
    def A(self) -> int:
        return self.a + 1

    @property
    def B(self) -> int:
        return self.b + 1

    def swapped(self) -> RealAnalyticSpec:
        return RealAnalyticSpec(self.b, self.a, self.u1, self.u2, self.N, self.variant)


def _check_convergent(spec: RealAnalyticSpec):
    if spec.a + spec.b == 0:
        raise NonConvergent(
            "the lattice sum of E^{0,0} does not converge absolutely",
            context={"a": spec.a, "b": spec.b},
        )


def _zeta_n(e: int, N: int) -> mpmath.mpc:
    return mpmath.expjpi(2 * mpmath.mpf(e % N) / N)


def _partial_fraction_row(A: int, B: int, p: mpmath.mpc, q: mpmath.mpc) -> mpmath.mpc:
    """``sum_{j in Z} (j + p)^-A (j + q)^-B`` for ``p != q`` mod 1, neither integral."""
    delta = q - p
    total = mpmath.mpc(0)
    for i in range(2, A + 1):
        alpha_i = (-1) ** (A - i) * math.comb(A + B - i - 1, A - i) / delta ** (A + B - i)
        total += alpha_i * row_sum(i, p)
    for i in range(2, B + 1):
        beta_i = (-1) ** A * math.comb(A + B - i - 1, B - i) / delta ** (A + B - i)
        total += beta_i * row_sum(i, q)
    alpha_1 = (-1) ** (A - 1) * math.comb(A + B - 2, A - 1) / delta ** (A + B - 1)
    total += alpha_1 * mpmath.pi * (mpmath.cot(mpmath.pi * p) - mpmath.cot(mpmath.pi * q))
    return total


def _row_integral(A: int, B: int, m: int, y: mpmath.mpf, N: int) -> mpmath.mpc:
    """``int_R (x + p)^-A (x + q)^-B dx`` for ``p - q = 2 i m y / N``."""
    width = 2j * abs(m) * y / N
    if m > 0:
        return 2j * mpmath.pi * (-1) ** (B - 1) * math.comb(A + B - 2, B - 1) * width ** (1 - A - B)
    return 2j * mpmath.pi * (-1) ** (A - 1) * math.comb(A + B - 2, A - 1) * width ** (1 - A - B)


def _integral_constants(A: int, B: int, y: mpmath.mpf, N: int) -> tuple[mpmath.mpc, mpmath.mpc]:
    """``(K+, K-)`` with ``J(m) = K+- |m|^(1-A-B)`` for ``m > 0`` and ``m < 0``."""
    width = 2j * y / N
    plus = 2j * mpmath.pi * (-1) ** (B - 1) * math.comb(A + B - 2, B - 1) * width ** (1 - A - B)
    minus = 2j * mpmath.pi * (-1) ** (A - 1) * math.comb(A + B - 2, A - 1) * width ** (1 - A - B)
    return plus, minus


def default_row_cutoff(N: int, y: float) -> int:
    """Rows beyond this |m| differ from their integrals by less than e^-57."""
    return math.ceil(9.2 * N / y) + N


def _lattice_E(spec: RealAnalyticSpec, tau: mpmath.mpc, cutoff: int) -> ComplexValue:
    A, B, N = spec.A, spec.B, spec.N
    y = tau.imag
    scale = mpmath.power(N, -(A + B))
    total = mpmath.mpc(0)
    if spec.u1 == 0:
        total += scale * row_sum(A + B, mpmath.mpc(mpmath.mpf(spec.u2) / N))
    last = mpmath.mpf(0)
    for sign in (1, -1):
        start = spec.u1 if sign > 0 else (-spec.u1) % N
        m_abs = start if start else N
        while m_abs <= cutoff:
            m = sign * m_abs
            p = (m * tau + spec.u2) / N
            q = (m * mpmath.conj(tau) + spec.u2) / N
            difference = _partial_fraction_row(A, B, p, q) - _row_integral(A, B, m, y, N)
            total += scale * difference
            last = max(last, abs(scale * difference)) if m_abs + N > cutoff else last
            m_abs += N
    plus, minus = _integral_constants(A, B, y, N)
    s = A + B - 1
    zeta_sum = plus * hurwitz_zeta(FractionModOne.of(spec.u1, N), s).value
    zeta_sum += minus * hurwitz_zeta(FractionModOne.of(-spec.u1, N), s).value
    total += scale * mpmath.power(N, 1 - A - B) * zeta_sum
    tail = 2 * last / (1 - mpmath.exp(-2 * mpmath.pi * y))
    return ComplexValue(total, tail + mpmath.eps * 1e3 * (1 + abs(total)))


def _lattice_F(spec: RealAnalyticSpec, tau: mpmath.mpc, cutoff: int) -> ComplexValue:
    A, B, N = spec.A, spec.B, spec.N
    u1, u2 = spec.u1, spec.u2
    y = tau.imag
    scale = mpmath.power(N, -(A + B))
    sign_ab = (-1) ** (A + B)
    hat_plus = periodic_zeta(FractionModOne.of(u2, N), A + B).value
    hat_minus = periodic_zeta(FractionModOne.of(-u2, N), A + B).value
    total = hat_plus + sign_ab * hat_minus
    last = mpmath.mpf(0)
    for m in [j for m_abs in range(1, cutoff + 1) for j in (m_abs, -m_abs)]:
        row = mpmath.mpc(0)
        for r in range(N):
            p = (m * tau + r) / N
            q = (m * mpmath.conj(tau) + r) / N
            row += _zeta_n(m * u1 + r * u2, N) * _partial_fraction_row(A, B, p, q)
        if u2 == 0:
            row -= N * _zeta_n(m * u1, N) * _row_integral(A, B, m, y, N)
        total += scale * row
        if abs(m) == cutoff:
            last = max(last, abs(scale * row))
    if u2 == 0:
        plus, minus = _integral_constants(A, B, y, N)
        s = A + B - 1
        zeta_sum = plus * periodic_zeta(FractionModOne.of(u1, N), s).value
        zeta_sum += minus * periodic_zeta(FractionModOne.of(-u1, N), s).value
        total += scale * N * zeta_sum
    tail = 2 * last / (1 - mpmath.exp(-2 * mpmath.pi * y / N))
    return ComplexValue(total, tail + mpmath.eps * 1e3 * (1 + abs(total)))


def real_analytic_eval(spec: RealAnalyticSpec, tau, cutoff: Optional[int] = None) -> ComplexValue:
    """The lattice sum of E^{a,b}_u or F^{a,b}_u at tau, rows ``|m| <= cutoff``."""
    _check_convergent(spec)
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise InvalidSpec("tau must lie in the upper half-plane")
    cutoff = cutoff if cutoff is not None else default_row_cutoff(spec.N, float(tau.imag))
    logger.debug("real_analytic_eval %s rows |m| <= %d", spec, cutoff)
    with mpmath.workprec(mpmath.mp.prec + 30):
        if spec.variant is RealAnalyticVariant.E_SERIES:
            value = _lattice_E(spec, tau, cutoff)
        else:
            value = _lattice_F(spec, tau, cutoff)
    return ComplexValue(+value.value, value.err)


# -- Fourier expansions -----------------------------------------------------


def _S(t: int, u: int, alpha: ArithmeticFunctionModN, beta: ArithmeticFunctionModN, tau, T) -> ComplexValue:
    return S_at(DoubleSeriesSpec(t, u, alpha, beta), complex(tau), cutoff=T)


def _series_blocks(
    a: int,
    b: int,
    N: int,
    tau: mpmath.mpc,
    holomorphic: tuple[tuple[ArithmeticFunctionModN, ArithmeticFunctionModN], ...],
    antiholomorphic: tuple[tuple[ArithmeticFunctionModN, ArithmeticFunctionModN], ...],
    T: Optional[int],
) -> ComplexValue:
    d = tau - mpmath.conj(tau)
    sign = (-1) ** (a + b)
    step = -2j * mpmath.pi / N
    total = ComplexValue(0, 0)
    for j in range(a + 1):
        coefficient = (
            (-1) ** (b + 1) / mpmath.factorial(b)
            * mpmath.factorial(a + b - j) / (mpmath.factorial(j) * mpmath.factorial(a - j))
            * step ** (j + 1) * d ** (j - a - b - 1)
        )
        (alpha1, beta1), (alpha2, beta2) = holomorphic
        pair = _S(j - a - b - 1, j, alpha1, beta1, tau, T) + _S(j - a - b - 1, j, alpha2, beta2, tau, T).scale(sign)
        total = total + pair.scale(coefficient)
    for j in range(b + 1):
        coefficient = (
            (-1) ** (b + 1) / mpmath.factorial(a)
            * mpmath.factorial(a + b - j) / (mpmath.factorial(j) * mpmath.factorial(b - j))
            * step ** (j + 1) * d ** (j - a - b - 1)
        )
        (alpha1, beta1), (alpha2, beta2) = antiholomorphic
        pair = (
            _S(j - a - b - 1, j, alpha1, beta1, tau, T).conjugate()
            + _S(j - a - b - 1, j, alpha2, beta2, tau, T).conjugate().scale(sign)
        )
        total = total + pair.scale(coefficient)
    return total


def _fourier_E(spec: RealAnalyticSpec, tau: mpmath.mpc, T: Optional[int]) -> ComplexValue:
    a, b, N, u1, u2 = spec.a, spec.b, spec.N, spec.u1, spec.u2
    weight = a + b + 2
    sign = (-1) ** (a + b)
    d = tau - mpmath.conj(tau)
    total = ComplexValue(0, 0)
    if u1 == 0:
        block = hurwitz_zeta(FractionModOne.of(u2, N), weight) + hurwitz_zeta(FractionModOne.of(-u2, N), weight).scale(sign)
        total = total + block.scale(mpmath.power(N, -weight))
    block = hurwitz_zeta(FractionModOne.of(u1, N), weight - 1) + hurwitz_zeta(FractionModOne.of(-u1, N), weight - 1).scale(sign)
    factor = (-1) ** b * 2j * mpmath.pi * mpmath.power(N, -weight) * math.comb(a + b, a) * d ** (-a - b - 1)
    total = total + block.scale(factor)
    holomorphic = ((delta_fn(u1, N), hat_delta_fn(-u2, N)), (delta_fn(-u1, N), hat_delta_fn(u2, N)))
    return total + _series_blocks(a, b, N, tau, holomorphic, holomorphic, T)


def _fourier_F(spec: RealAnalyticSpec, tau: mpmath.mpc, T: Optional[int]) -> ComplexValue:
    a, b, N, u1, u2 = spec.a, spec.b, spec.N, spec.u1, spec.u2
    weight = a + b + 2
    sign = (-1) ** (a + b)
    d = tau - mpmath.conj(tau)
    total = periodic_zeta(FractionModOne.of(u2, N), weight) + periodic_zeta(FractionModOne.of(-u2, N), weight).scale(sign)
    if u2 == 0:
        block = periodic_zeta(FractionModOne.of(u1, N), weight - 1) + periodic_zeta(
            FractionModOne.of(-u1, N), weight - 1
        ).scale(sign)
        factor = (-1) ** b * 2j * mpmath.pi * math.comb(a + b, a) * d ** (-a - b - 1)
        total = total + block.scale(factor)
    holomorphic = ((hat_delta_fn(-u1, N), delta_fn(-u2, N)), (hat_delta_fn(u1, N), delta_fn(u2, N)))
    antiholomorphic = ((hat_delta_fn(u1, N), delta_fn(u2, N)), (hat_delta_fn(-u1, N), delta_fn(-u2, N)))
    return total + _series_blocks(a, b, N, tau, holomorphic, antiholomorphic, T).scale(N)


def real_analytic_fourier_eval(spec: RealAnalyticSpec, tau, T: Optional[int] = None) -> ComplexValue:
    """E^{a,b}_u or F^{a,b}_u through its Fourier expansion.

    Two constant blocks (zeta values, and a multiple of ``(tau - conj(tau))^(-a-b-1)``)
    followed by the holomorphic and antiholomorphic blocks, sums over
    ``j <= a`` and ``j <= b`` of ``S^{j-a-b-1, j}`` weighted by binomials and
    powers of ``tau - conj(tau)``.
    """
    _check_convergent(spec)
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise InvalidSpec("tau must lie in the upper half-plane")
    if spec.variant is RealAnalyticVariant.E_SERIES:
        return _fourier_E(spec, tau, T)
    return _fourier_F(spec, tau, T)


def fab_eab_check(spec: RealAnalyticSpec, tau) -> IdentityCheck:
    """``F^{a,b}_u = sum_{x,y} zeta_N^(x u1 + y u2) E^{a,b}_{(x,y)}``, both sides as lattice sums."""
    if spec.variant is not RealAnalyticVariant.F_SERIES:
        spec = RealAnalyticSpec(spec.a, spec.b, spec.u1, spec.u2, spec.N, RealAnalyticVariant.F_SERIES)
    N = spec.N
    lhs = real_analytic_eval(spec, tau)
    rhs = ComplexValue(0, 0)
    for x in range(N):
        for y in range(N):
            E = real_analytic_eval(RealAnalyticSpec(spec.a, spec.b, x, y, N), tau)
            rhs = rhs + E.scale(CyclotomicNumber.root_of_unity(x * spec.u1 + y * spec.u2, N).to_complex())
    return IdentityCheck("F^{a,b}_u as a Fourier transform of E^{a,b}", lhs, rhs)


def fourier_expansion_check(spec: RealAnalyticSpec, tau, T: Optional[int] = None) -> IdentityCheck:
    return IdentityCheck(
        f"{spec.variant.value}^{{a,b}}_u Fourier expansion",
        real_analytic_fourier_eval(spec, tau, T),
        real_analytic_eval(spec, tau),
    )
