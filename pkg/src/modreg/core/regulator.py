"""The regulator integral along the Shokurov cycle: terms A to F, the main formula and its cross-checks.

The regularized integral of the Eisenstein class ``Eis^{k1,k2}(u1, u2)`` over
``X^k {0, oo}`` equals ``A + B + C + D + E + F``.  A is a regularized value of
the completed L-function of a product of two G-series at level ``N^2``; B to F
come from the constant terms of the Eisenstein series and cancel:

* ``C + F = 0``;
* for ``k2 = 0``, ``D = 0`` and ``B + E = 0``;
* for ``k2 >= 1``, ``B = 0``, and ``D + E = 0`` (k2 odd) or ``E = 0`` (k2 even).

Before the Rogers-Zudilin swap the integral is an explicit y-integral for
``Re(s) << 0``; :func:`pre_swap_integral_check` compares it with the closed
form obtained from the Mellin lemmas and the swapped double-series integral.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional

import mpmath
import numpy as np

from .cyclotomic import CyclotomicNumber
from .eisenstein import EisensteinSpec, Family, ModularPair, constant_term, g_pair
from .errors import ConvergenceViolation, InvalidSpec, OutsideStrip, TailNotClosed
from .lfunc import DEFAULT_EPS, lambda_star, required_truncation
from .quadrature import integrate_log_window
from .rz_engine import (
    DoubleSeriesSpec,
    S_fast,
    S_magnitude_bound,
    delta_fn,
    hat_delta_fn,
    lower_tail_bound,
    mellin_S_closed,
    swap_side_integral,
    upper_tail_bound,
)
from .zeta_special import (
    ZERO,
    ComplexValue,
    FractionModOne,
    IdentityCheck,
    hurwitz_zeta,
    hurwitz_zeta_exact,
    periodic_zeta,
    periodic_zeta_exact,
    zeta_star_at_one,
)

logger = logging.getLogger(__name__)

TERM_NAMES = ("A", "B", "C", "D", "E", "F")


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


def _ipow(n: int) -> mpmath.mpc:
    return CyclotomicNumber.i_power(n).to_complex()


def _mpf(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class RegulatorInput:
    """Weights ``k1, k2 >= 0``, level N and the two torsion labels ``u_i = (a_i, b_i)`` mod N."""

    k1: int
    k2: int
    N: int
    u1: tuple[int, int]
    u2: tuple[int, int]

    def __post_init__(self):
        if self.N < 3:
            raise InvalidSpec(f"level N must be at least 3, got {self.N}")
        if self.k1 < 0 or self.k2 < 0:
            raise InvalidSpec(f"weights must be nonnegative, got ({self.k1}, {self.k2})")
        u1 = (self.u1[0] % self.N, self.u1[1] % self.N)
        u2 = (self.u2[0] % self.N, self.u2[1] % self.N)
        object.__setattr__(self, "u1", u1)
        object.__setattr__(self, "u2", u2)
        for index, k, u in ((1, self.k1, u1), (2, self.k2, u2)):
            if k == 0 and u == (0, 0):
                raise InvalidSpec(
                    f"u{index} must be nonzero when k{index} = 0",
                    context=self.as_dict(),
                )
            if k == 1 and u[1] == 0:
                raise InvalidSpec(
                    f"b{index} must be nonzero when k{index} = 1 (G^(2)_(b,.) needs b != 0)",
                    context=self.as_dict(),
                )

    @property
    def k(self) -> int:
        return self.k1 + self.k2

    @property
    def a1(self) -> int:
        return self.u1[0]

    @property
    def b1(self) -> int:
        return self.u1[1]

    @property
    def a2(self) -> int:
        return self.u2[0]

    @property
    def b2(self) -> int:
        return self.u2[1]

    def swapped(self) -> RegulatorInput:
        """The input with ``(k1, u1)`` and ``(k2, u2)`` exchanged."""
        return RegulatorInput(self.k2, self.k1, self.N, self.u2, self.u1)

    def as_dict(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "N": self.N, "u1": list(self.u1), "u2": list(self.u2)}

    def __str__(self) -> str:
        return f"k1={self.k1},k2={self.k2},N={self.N},u1={self.u1},u2={self.u2}"


def random_admissible_input(k1: int, k2: int, N: int, rng: np.random.Generator) -> RegulatorInput:
    """A uniformly drawn input satisfying the hypotheses of the main formula."""
    while True:
        u1 = (int(rng.integers(0, N)), int(rng.integers(0, N)))
        u2 = (int(rng.integers(0, N)), int(rng.integers(0, N)))
        try:
            return RegulatorInput(k1, k2, N, u1, u2)
        except InvalidSpec:
            continue


# -- zeta combinations ------------------------------------------------------


def _x(n: int, N: int) -> FractionModOne:
    return FractionModOne.of(n, N)


def _pair_vanishes(n: int, N: int, sign: int) -> bool:
    return sign == -1 and (2 * n) % N == 0


def zhat_pair(n: int, N: int, s, sign: int) -> ComplexValue:
    """``zhat(n/N, s) + sign * zhat(-n/N, s)``; exactly zero when ``n = -n`` and ``sign = -1``."""
    if _pair_vanishes(n, N, sign):
        return ZERO
    return periodic_zeta(_x(n, N), s) + periodic_zeta(_x(-n, N), s).scale(sign)


def zeta_pair(n: int, N: int, s, sign: int) -> ComplexValue:
    """``zeta(n/N, s) + sign * zeta(-n/N, s)``, with the same exact zero."""
    if _pair_vanishes(n, N, sign):
        return ZERO
    return hurwitz_zeta(_x(n, N), s) + hurwitz_zeta(_x(-n, N), s).scale(sign)


def _zeta_pair_exact(n: int, N: int, m: int, sign: int) -> Fraction:
    """``zeta(n/N, 1-m) + sign * zeta(-n/N, 1-m)`` for ``m >= 1``."""
    return hurwitz_zeta_exact(_x(n, N), m) + sign * hurwitz_zeta_exact(_x(-n, N), m)


def _zhat_sum_exact(n: int, N: int, m: int) -> CyclotomicNumber:
    """``zhat(n/N, 1-m) + zhat(-n/N, 1-m)`` for ``m >= 1``."""
    return periodic_zeta_exact(_x(n, N), m) + periodic_zeta_exact(_x(-n, N), m)


# -- term A: the L-value ----------------------------------------------------


def default_truncation(N: int, weight: int) -> int:
    """Truncation making the q-tail of a weight-``weight`` product negligible at ``y0 = 1/N``."""
    return required_truncation(1, 1.0 / N, weight, 1e-20) + 16


def a_term_series(inp: RegulatorInput, T: Optional[int] = None) -> ModularPair:
    """``(G^(k2+1)_{b2,a1} + G^(k2+1)_{b2,-a1}) (G^(k1+1)_{b1,-a2} - G^(k1+1)_{b1,a2})`` with its W-image."""
    T = T or default_truncation(inp.N, inp.k + 2)
    N = inp.N
    left = g_pair(inp.k2 + 1, inp.b2, inp.a1, N, T) + g_pair(inp.k2 + 1, inp.b2, -inp.a1, N, T)
    right = g_pair(inp.k1 + 1, inp.b1, -inp.a2, N, T) - g_pair(inp.k1 + 1, inp.b1, inp.a2, N, T)
    return left * right


def theorem_rhs_series(inp: RegulatorInput, T: Optional[int] = None) -> ModularPair:
    """``G^(k2+1)_{b2,a1} G^(k1+1)_{b1,-a2} - G^(k2+1)_{b2,-a1} G^(k1+1)_{b1,a2}`` with its W-image."""
    T = T or default_truncation(inp.N, inp.k + 2)
    N = inp.N
    first = g_pair(inp.k2 + 1, inp.b2, inp.a1, N, T) * g_pair(inp.k1 + 1, inp.b1, -inp.a2, N, T)
    second = g_pair(inp.k2 + 1, inp.b2, -inp.a1, N, T) * g_pair(inp.k1 + 1, inp.b1, inp.a2, N, T)
    return first - second


def _lambda_star_at_zero(pair: ModularPair, eps: float) -> ComplexValue:
    if pair.f.is_zero() and pair.wf.is_zero():
        return ZERO
    return lambda_star(pair.f, pair.wf, pair.level, pair.weight, "zero", eps).value


def _main_factor(inp: RegulatorInput) -> mpmath.mpc:
    """``i^(k1-k2+1) (k1+2)(k2+2) / N^(k+2) (2 pi)^(k+1)``."""
    k = inp.k
    return (
        _ipow(inp.k1 - inp.k2 + 1)
        * (inp.k1 + 2) * (inp.k2 + 2)
        * mpmath.power(inp.N, -(k + 2))
        * mpmath.power(2 * mpmath.pi, k + 1)
    )


def half_regulator_A(inp: RegulatorInput, T: Optional[int] = None, eps: float = DEFAULT_EPS) -> ComplexValue:
    """``A^{k1,k2}(u1,u2) = i^(k1-k2+1) (k1+2)(k2+2)/(4 N^(k+2)) (2 pi)^(k+1) Lambda*(a_term_series, 0)``."""
    series = a_term_series(inp, T)
    value = _lambda_star_at_zero(series, eps)
    return value.scale(_main_factor(inp) / 4)


def term_A(inp: RegulatorInput, T: Optional[int] = None, eps: float = DEFAULT_EPS) -> ComplexValue:
    return half_regulator_A(inp, T, eps)


# -- terms B to F: constant-term contributions ------------------------------


def _alpha(inp: RegulatorInput, weight: int) -> ComplexValue:
    """``zhat(-b1/N, weight) + (-1)^k1 zhat(b1/N, weight)``."""
    return zhat_pair(-inp.b1, inp.N, weight, _sgn(inp.k1))


def _c_f_applies(inp: RegulatorInput) -> bool:
    return inp.k1 == 0 and inp.b1 == 0 and inp.a2 != 0


def term_B(inp: RegulatorInput, zeta_star_method: str = "digamma") -> ComplexValue:
    """``(-1)^k1 (k1+2)! (k2+2) / (8 pi^2 N^2) (2 i pi)^k2 alpha (zhat(a2/N,2) - zhat(-a2/N,2)) Z``.

    Z is ``zeta*(-b2/N, 1) - zeta*(b2/N, 1)`` for k2 = 0 and
    ``zeta(-b2/N, 1-k2) + (-1)^(k2+1) zeta(b2/N, 1-k2)`` otherwise.
    """
    N, k1, k2 = inp.N, inp.k1, inp.k2
    if k2 == 0:
        if _pair_vanishes(inp.b2, N, -1):
            return ZERO
        z = zeta_star_at_one(_x(-inp.b2, N), zeta_star_method) - zeta_star_at_one(_x(inp.b2, N), zeta_star_method)
    else:
        exact = _zeta_pair_exact(-inp.b2, N, k2, _sgn(k2 + 1))
        if exact == 0:
            return ZERO
        z = ComplexValue.exact(exact)
    factor = (
        _sgn(k1) * math.factorial(k1 + 2) * (k2 + 2)
        / (8 * mpmath.pi**2 * N**2)
        * mpmath.power(2j * mpmath.pi, k2)
    )
    return (_alpha(inp, k1 + 2) * zhat_pair(inp.a2, N, 2, -1) * z).scale(factor)


def term_C(inp: RegulatorInput) -> ComplexValue:
    """``(k2+2)/(2 N^2) (2 i pi)^k2 (zhat(a1/N,1) + zhat(-a1/N,1)) (zhat(a2/N,1) - zhat(-a2/N,1)) Z``.

    Present only for ``k1 = 0``, ``b1 = 0``, ``a2 != 0``;
    ``Z = zeta(-b2/N, -k2) + (-1)^(k2+1) zeta(b2/N, -k2)``.
    """
    if not _c_f_applies(inp):
        return ZERO
    N, k2 = inp.N, inp.k2
    z = _zeta_pair_exact(-inp.b2, N, k2 + 1, _sgn(k2 + 1))
    if z == 0:
        return ZERO
    factor = mpmath.mpf(k2 + 2) / (2 * N**2) * mpmath.power(2j * mpmath.pi, k2)
    return (zhat_pair(inp.a1, N, 1, 1) * zhat_pair(inp.a2, N, 1, -1)).scale(factor * _mpf(z))


def term_D(inp: RegulatorInput) -> ComplexValue:
    """Zero unless k2 is odd; then

    ``-i^k1 (k1+2)(k2+2)/(2 N^2) (2 pi)^(k1+2k2+2) (zhat(a1/N,-k2) + zhat(-a1/N,-k2)) zeta(-a2/N,-k2-1) L``
    with the limit ``L = (k+1)! (-i)^(k+2) i pi / ((k2+1)! (2 pi)^(k+2)) (zhat(b1/N,k+2) + (-1)^k1 zhat(-b1/N,k+2))``.
    """
    N, k1, k2, k = inp.N, inp.k1, inp.k2, inp.k
    if k2 % 2 == 0:
        return ZERO
    even_part = _zhat_sum_exact(inp.a1, N, k2 + 1)
    zeta_a2 = hurwitz_zeta_exact(_x(-inp.a2, N), k2 + 2)
    if even_part.is_zero() or zeta_a2 == 0:
        return ZERO
    limit = zhat_pair(inp.b1, N, k + 2, _sgn(k1)).scale(
        math.factorial(k + 1) * _ipow(-(k + 2)) * 1j * mpmath.pi
        / (math.factorial(k2 + 1) * mpmath.power(2 * mpmath.pi, k + 2))
    )
    factor = (
        -_ipow(k1) * (k1 + 2) * (k2 + 2) / (2 * mpmath.mpf(N) ** 2)
        * mpmath.power(2 * mpmath.pi, k1 + 2 * k2 + 2)
        * even_part.to_complex()
        * _mpf(zeta_a2)
    )
    return limit.scale(factor)


def term_E(inp: RegulatorInput) -> ComplexValue:
    """``(-1)^k1 i (k1+2)(k2+2)(k+1)!/(8 pi N^2) a0(H^(k2+1)_{b2,a1} + H^(k2+1)_{b2,-a1}) alpha (zhat(a2/N,k2+2) - zhat(-a2/N,k2+2))``."""
    N, k1, k2, k = inp.N, inp.k1, inp.k2, inp.k
    a0 = constant_term(EisensteinSpec(Family.H, k2 + 1, inp.b2, inp.a1, N)) + constant_term(
        EisensteinSpec(Family.H, k2 + 1, inp.b2, -inp.a1, N)
    )
    if a0.is_zero():
        return ZERO
    factor = (
        _sgn(k1) * 1j * (k1 + 2) * (k2 + 2) * math.factorial(k + 1)
        / (8 * mpmath.pi * N**2)
        * a0.to_complex()
    )
    return (_alpha(inp, k + 2) * zhat_pair(inp.a2, N, k2 + 2, -1)).scale(factor)


def term_F(inp: RegulatorInput) -> ComplexValue:
    """``k2! (k2+2)/(2 N^2) (2 {a2/N} - 1) (zhat(-b2/N,k2+1) + (-1)^(k2+1) zhat(b2/N,k2+1)) (zhat(a1/N,1) + zhat(-a1/N,1))``.

    Present only for ``k1 = 0``, ``b1 = 0``, ``a2 != 0``.
    """
    if not _c_f_applies(inp):
        return ZERO
    N, k2 = inp.N, inp.k2
    factor = (
        math.factorial(k2) * (k2 + 2) / (2 * mpmath.mpf(N) ** 2)
        * (2 * _mpf(_x(inp.a2, N).value) - 1)
    )
    return (zhat_pair(-inp.b2, N, k2 + 1, _sgn(k2 + 1)) * zhat_pair(inp.a1, N, 1, 1)).scale(factor)


TERMS: dict[str, Callable[[RegulatorInput], ComplexValue]] = {
    "B": term_B,
    "C": term_C,
    "D": term_D,
    "E": term_E,
    "F": term_F,
}


def cancellation_residuals(inp: RegulatorInput, terms: dict[str, ComplexValue]) -> dict[str, float]:
    """Absolute values of the combinations of B..F that vanish for this input."""
    residuals = {"C+F": float(abs(terms["C"] + terms["F"]))}
    if inp.k2 == 0:
        residuals["D"] = float(abs(terms["D"]))
        residuals["B+E"] = float(abs(terms["B"] + terms["E"]))
    else:
        residuals["B"] = float(abs(terms["B"]))
        if inp.k2 % 2:
            residuals["D+E"] = float(abs(terms["D"] + terms["E"]))
        else:
            residuals["E"] = float(abs(terms["E"]))
    return residuals


# -- the main formula -------------------------------------------------------


def theorem_rhs(inp: RegulatorInput, T: Optional[int] = None, eps: float = DEFAULT_EPS) -> ComplexValue:
    """``(k1+2)(k2+2)/(2 N^(k+2)) (2 pi)^(k+1) i^(k1-k2+1) Lambda*(theorem_rhs_series, 0)``."""
    value = _lambda_star_at_zero(theorem_rhs_series(inp, T), eps)
    return value.scale(_main_factor(inp) / 2)


@dataclass(frozen=True)
class RegulatorReport:
    input: RegulatorInput
    terms: dict[str, ComplexValue]
    lhs_theorem: ComplexValue
    rhs_theorem: ComplexValue
    cancellation_residuals: dict[str, float]
    swapped: Optional[RegulatorReport] = None
    pre_swap: Optional[IdentityCheck] = field(default=None)

    @property
    def final_lhs_via_A(self) -> ComplexValue:
        return self.terms["A"]

    @property
    def total(self) -> ComplexValue:
        """``A + B + C + D + E + F``."""
        value = ZERO
        for name in TERM_NAMES:
            value = value + self.terms[name]
        return value

    @property
    def theorem_check(self) -> IdentityCheck:
        return IdentityCheck("regulator main formula", self.lhs_theorem, self.rhs_theorem)

    def antisymmetry_check(self) -> IdentityCheck:
        """The swapped input's right-hand side against ``(-1)^(k+1)`` times this one's."""
        if self.swapped is None:
            raise InvalidSpec("the report was computed without the swapped input")
        sign = _sgn(self.input.k + 1)
        return IdentityCheck("regulator antisymmetry", self.swapped.rhs_theorem, self.rhs_theorem.scale(sign))

    def to_dict(self) -> dict:
        data = {
            "input": self.input.as_dict(),
            **{name: self.terms[name].to_json() for name in TERM_NAMES},
            "lhs_via_A": self.lhs_theorem.to_json(),
            "rhs_theorem": self.rhs_theorem.to_json(),
            "final_lhs_via_A": self.final_lhs_via_A.to_json(),
            "cancellation_residuals": dict(sorted(self.cancellation_residuals.items())),
        }
        if self.pre_swap is not None:
            data["pre_swap"] = {
                "lhs": self.pre_swap.lhs.to_json(),
                "rhs": self.pre_swap.rhs.to_json(),
                "residual": self.pre_swap.residual,
            }
        if self.swapped is not None:
            data["swapped"] = self.swapped.to_dict()
        return data


def theorem_both_sides(
    inp: RegulatorInput,
    T: Optional[int] = None,
    eps: float = DEFAULT_EPS,
    with_swapped: bool = False,
) -> RegulatorReport:
    """Both paths of the main formula, with the six terms and their cancellations.

    LHS: ``A^{k1,k2}(u1,u2) + (-1)^(k+1) A^{k2,k1}(u2,u1)``.  RHS: one L-value of
    ``theorem_rhs_series``.  The two paths form different products before Lambda*.
    """
    logger.info("regulator %s", inp)
    a_value = half_regulator_A(inp, T, eps)
    a_swapped = half_regulator_A(inp.swapped(), T, eps)
    lhs = a_value + a_swapped.scale(_sgn(inp.k + 1))
    rhs = theorem_rhs(inp, T, eps)
    terms = {"A": a_value, **{name: term(inp) for name, term in TERMS.items()}}
    residuals = cancellation_residuals(inp, terms)
    logger.debug(
        "regulator %s: |lhs - rhs| = %.3g, cancellations %s",
        inp, IdentityCheck("regulator main formula", lhs, rhs).residual, residuals,
    )
    swapped = theorem_both_sides(inp.swapped(), T, eps) if with_swapped else None
    return RegulatorReport(inp, terms, lhs, rhs, residuals, swapped)


# -- the integral before the swap -------------------------------------------


@dataclass(frozen=True)
class FCombination:
    """``F^(k+2)_{-u}(i y) + (-1)^(k+1) conj(F^(k+2)_{-u}(i y))`` for ``u = (a, b)``.

    For ``y >= 1`` it is ``(1 + (-1)^(k+1)) zeta(-a/N, -k-1) + N^(-k-1) S^{0,k+1}(i y)``;
    for ``y < 1`` the inversion ``F_{a,b}(-1/tau) = tau^(k+2) F_{b,-a}(tau)`` gives
    ``(i/y)^(k+2) N^(-k-1) S^{0,k+1}(i/y)`` with no constant term.
    """

    k: int
    a: int
    b: int
    N: int

    @cached_property
    def constant(self) -> Fraction:
        return (1 - _sgn(self.k)) * hurwitz_zeta_exact(_x(-self.a, self.N), self.k + 2)

    @cached_property
    def direct(self) -> DoubleSeriesSpec:
        N, sign = self.N, _sgn(self.k + 1)
        return DoubleSeriesSpec(
            0,
            self.k + 1,
            hat_delta_fn(self.b, N) + hat_delta_fn(-self.b, N).scale(sign),
            delta_fn(-self.a, N) - delta_fn(self.a, N),
        )

    @cached_property
    def inverted(self) -> DoubleSeriesSpec:
        N, sign = self.N, _sgn(self.k + 1)
        return DoubleSeriesSpec(
            0,
            self.k + 1,
            hat_delta_fn(-self.a, N) - hat_delta_fn(self.a, N),
            delta_fn(-self.b, N) + delta_fn(self.b, N).scale(sign),
        )

    @property
    def _norm(self) -> float:
        return float(self.N) ** (-self.k - 1)

    def __call__(self, y: float) -> complex:
        if y >= 1.0:
            return float(self.constant) + self._norm * S_fast(self.direct, y)
        return (1j / y) ** (self.k + 2) * self._norm * S_fast(self.inverted, 1.0 / y)

    def direct_value(self, y: float) -> complex:
        return float(self.constant) + self._norm * S_fast(self.direct, y)

    def inverted_value(self, y: float) -> complex:
        return (1j / y) ** (self.k + 2) * self._norm * S_fast(self.inverted, 1.0 / y)

    def bound(self, y: float) -> float:
        if y >= 1.0:
            return abs(float(self.constant)) + self._norm * S_magnitude_bound(self.direct, y)
        return y ** (-self.k - 2) * self._norm * S_magnitude_bound(self.inverted, 1.0 / y)


def mellin_F_combination_closed(k: int, a: int, b: int, N: int, s) -> ComplexValue:
    """``int_0^oo FCombination(y) y^(s-1) dy`` for ``Re(s) < 0``:

    ``i^(k+2) (2 pi)^(s-k-2) Gamma(k+2-s) (zhat(a/N,k+2-s) - zhat(-a/N,k+2-s))
      (zeta(-b/N,1-s) + (-1)^(k+1) zeta(b/N,1-s))``.
    """
    s = mpmath.mpc(s)
    if s.real >= 0:
        raise OutsideStrip("the Mellin transform of the F-combination needs Re(s) < 0", context={"s": str(s)})
    first = zhat_pair(a, N, k + 2 - s, -1)
    second = zeta_pair(-b, N, 1 - s, _sgn(k + 1))
    factor = _ipow(k + 2) * mpmath.power(2 * mpmath.pi, s - k - 2) * mpmath.gamma(k + 2 - s)
    return (first * second).scale(factor)


def _window_integral(
    integrand: Callable[[float], complex],
    bound: Callable[[float], float],
    eps: float,
    label: str,
) -> ComplexValue:
    """``int_0^oo integrand`` over a window chosen so both tails of ``bound`` are below ``eps/4``."""
    y_lo, y_hi = 1.0, 1.0
    while lower_tail_bound(bound, y_lo) > eps / 4:
        y_lo /= 1.5
        if y_lo < 1e-4:
            raise TailNotClosed(f"{label}: integrand does not decay near zero")
    while upper_tail_bound(bound, y_hi) > eps / 4:
        y_hi *= 1.5
        if y_hi > 1e5:
            raise TailNotClosed(f"{label}: integrand does not decay at infinity")
    tail = lower_tail_bound(bound, y_lo) + upper_tail_bound(bound, y_hi)
    logger.debug("%s: window [%g, %g], tails %.3g", label, y_lo, y_hi, tail)
    value = integrate_log_window(integrand, y_lo, y_hi, panels_per_decade=6)
    return value + ComplexValue(0, tail)


def mellin_F_combination_quadrature(k: int, a: int, b: int, N: int, s, eps: float = 1e-10) -> ComplexValue:
    """The same Mellin transform by quadrature of :class:`FCombination`."""
    s = complex(s)
    if s.real >= 0:
        raise OutsideStrip("the Mellin transform of the F-combination needs Re(s) < 0", context={"s": str(s)})
    phi = FCombination(k, a, b, N)
    return _window_integral(
        lambda y: phi(y) * y ** (s - 1),
        lambda y: phi.bound(y) * y ** (s.real - 1),
        eps,
        "mellin_F_combination",
    )


@dataclass(frozen=True)
class _PreSwapData:
    inp: RegulatorInput

    @cached_property
    def phi(self) -> FCombination:
        return FCombination(self.inp.k2, self.inp.a2, self.inp.b2, self.inp.N)

    @cached_property
    def alpha1(self) -> complex:
        return complex(_alpha(self.inp, self.inp.k1 + 2).value)

    @cached_property
    def beta1(self) -> complex:
        """``2 i pi (2i)^(-k1-1) (zhat(-a1/N,k1+1) + (-1)^k1 zhat(a1/N,k1+1))`` for ``k1 = 0, b1 = 0``."""
        inp = self.inp
        if inp.k1 != 0 or inp.b1 != 0:
            return 0j
        pair = zhat_pair(-inp.a1, inp.N, inp.k1 + 1, _sgn(inp.k1))
        return complex(pair.value * 2j * mpmath.pi * mpmath.power(2j, -(inp.k1 + 1)))

    @cached_property
    def t1_factor(self) -> float:
        inp = self.inp
        return (
            _sgn(inp.k1 + 1) * math.factorial(inp.k1) * (inp.k1 + 2) * (inp.k2 + 2)
            / (2 * inp.N**2) * (2 * math.pi) ** inp.k2
        )

    @cached_property
    def t2_factor(self) -> complex:
        inp = self.inp
        return complex(
            -_ipow(inp.k1) * (inp.k1 + 2) * (inp.k2 + 2)
            / (4 * mpmath.mpf(inp.N) ** (inp.k1 + 2))
            * mpmath.power(2 * mpmath.pi, inp.k + 1)
        )

    @cached_property
    def s1(self) -> DoubleSeriesSpec:
        """``S^{-1,k1}_{hatdelta_a1 + hatdelta_-a1, delta_b1 + (-1)^k1 delta_-b1}``."""
        inp, N = self.inp, self.inp.N
        return DoubleSeriesSpec(
            -1,
            inp.k1,
            hat_delta_fn(inp.a1, N) + hat_delta_fn(-inp.a1, N),
            delta_fn(inp.b1, N) + delta_fn(-inp.b1, N).scale(_sgn(inp.k1)),
        )


def pre_swap_lhs(inp: RegulatorInput, s, eps: float = 1e-9) -> ComplexValue:
    """``int_0^oo`` of the fibre-integrated form times ``y^s``, by quadrature in y."""
    s = complex(s)
    data = _PreSwapData(inp)
    k1, k2 = inp.k1, inp.k2
    sigma = s.real

    def integrand(y: float) -> complex:
        constants = data.t1_factor * ((k1 + 1) * data.alpha1 * y ** (k2 - 1) + data.beta1 * y**k2) * y**s
        series = data.t2_factor * S_fast(data.s1, 1.0 / y) * y ** (s + k2)
        return data.phi(y) * (constants + series)

    def bound(y: float) -> float:
        constants = abs(data.t1_factor) * ((k1 + 1) * abs(data.alpha1) * y ** (k2 - 1) + abs(data.beta1) * y**k2)
        series = abs(data.t2_factor) * S_magnitude_bound(data.s1, 1.0 / y) * y**k2
        return data.phi.bound(y) * (constants + series) * y**sigma

    return _window_integral(integrand, bound, eps, "pre_swap_lhs")


def pre_swap_rhs(inp: RegulatorInput, s, eps: float = 1e-9) -> ComplexValue:
    """The four-block closed form: two F-combination Mellin transforms, one S Mellin transform and the swapped integral."""
    s = complex(s)
    data = _PreSwapData(inp)
    N, k1, k2 = inp.N, inp.k1, inp.k2
    constants = mellin_F_combination_closed(k2, inp.a2, inp.b2, N, s + k2).scale((k1 + 1) * data.alpha1)
    if data.beta1:
        constants = constants + mellin_F_combination_closed(k2, inp.a2, inp.b2, N, s + k2 + 1).scale(data.beta1)
    total = constants.scale(data.t1_factor)
    c = data.phi.constant
    if c:
        block = mellin_S_closed(data.s1, s + k2 + 1, inverted=True)
        total = total + block.scale(data.t2_factor * float(c))
    swapped = swap_side_integral(
        DoubleSeriesSpec(
            k1,
            -s,
            delta_fn(inp.b1, N) + delta_fn(-inp.b1, N).scale(_sgn(k1)),
            delta_fn(-inp.a2, N) - delta_fn(inp.a2, N),
        ),
        DoubleSeriesSpec(
            s + k2,
            0,
            hat_delta_fn(inp.a1, N) + hat_delta_fn(-inp.a1, N),
            hat_delta_fn(inp.b2, N) + hat_delta_fn(-inp.b2, N).scale(_sgn(k2 + 1)),
        ),
        s + k2 + 1,
        eps,
    )
    return total + swapped.scale(data.t2_factor * float(N) ** (-k2 - 1))


def pre_swap_integral_check(inp: RegulatorInput, s, eps: float = 1e-9) -> IdentityCheck:
    """Both sides of the y-integral before the swap, at ``Re(s) <= -k - 4``."""
    s = complex(s)
    if s.real > -inp.k - 4:
        raise ConvergenceViolation(
            f"the pre-swap integral is checked for Re(s) <= -k - 4 = {-inp.k - 4}",
            context={"s": str(s), "k": inp.k},
        )
    lhs = pre_swap_lhs(inp, s, eps)
    rhs = pre_swap_rhs(inp, s, eps)
    return IdentityCheck("pre-swap shokurov integral", lhs, rhs)
