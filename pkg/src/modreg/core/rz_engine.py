"""Double series S^{t,u}_{alpha,beta}, their Mellin transforms and the Rogers-Zudilin swap.

``S^{t,u}_{alpha,beta}(tau) = sum_{m,n >= 1} alpha(m) beta(n) m^t n^u q^(mn/N)``
with alpha, beta functions on Z/NZ.  Series are summed by exponent e = mn
from a cached coefficient sieve; all tail bounds use
``|c_e| <= 2 A e^w`` with ``A = max|alpha| max|beta|`` and
``w = max(Re t, 0) + max(Re u, 0) + 1/2`` (the divisor bound d(e) <= 2 sqrt(e)).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional, Union

import mpmath
import numpy as np

from .cyclotomic import CyclotomicNumber
from .errors import InvalidSpec, OutsideStrip, TailNotClosed
from .quadrature import integrate_log_window
from .zeta_special import ComplexValue, FractionModOne, IdentityCheck, hurwitz_zeta

logger = logging.getLogger(__name__)

_FAST_TOL = 1e-18
_MAX_SIEVE = 1 << 22


@dataclass(frozen=True, eq=False)
class ArithmeticFunctionModN:
    """A function Z/NZ -> Q(zeta_N), stored by its N exact values."""

    modulus: int
    values: tuple[CyclotomicNumber, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidSpec("modulus must be positive")
        values = tuple(_exact(v, self.modulus) for v in self.values)
        if len(values) != self.modulus:
            raise InvalidSpec(f"an arithmetic function mod {self.modulus} needs {self.modulus} values")
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, N: int) -> ArithmeticFunctionModN:
        return cls(N, tuple(CyclotomicNumber(N, []) for _ in range(N)))

    def __call__(self, n: int) -> CyclotomicNumber:
        return self.values[n % self.modulus]

    @cached_property
    def numeric(self) -> np.ndarray:
        return np.array([complex(v) for v in self.values], dtype=np.complex128)

    @cached_property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.numeric))) if self.modulus else 0.0

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def _check(self, other: ArithmeticFunctionModN):
        if other.modulus != self.modulus:
            raise InvalidSpec("arithmetic functions must share their modulus")

    def __add__(self, other: ArithmeticFunctionModN) -> ArithmeticFunctionModN:
        self._check(other)
        return ArithmeticFunctionModN(self.modulus, tuple(x + y for x, y in zip(self.values, other.values)))

    def __sub__(self, other: ArithmeticFunctionModN) -> ArithmeticFunctionModN:
        self._check(other)
        return ArithmeticFunctionModN(self.modulus, tuple(x - y for x, y in zip(self.values, other.values)))

    def __neg__(self) -> ArithmeticFunctionModN:
        return ArithmeticFunctionModN(self.modulus, tuple(-x for x in self.values))

    def scale(self, factor: Union[int, Fraction, CyclotomicNumber]) -> ArithmeticFunctionModN:
        return ArithmeticFunctionModN(self.modulus, tuple(x * factor for x in self.values))

    def __rmul__(self, factor) -> ArithmeticFunctionModN:
        return self.scale(factor)

    def conjugate(self) -> ArithmeticFunctionModN:
        return ArithmeticFunctionModN(self.modulus, tuple(x.conjugate() for x in self.values))

    def reflected(self) -> ArithmeticFunctionModN:
        """``n -> alpha(-n)``."""
        return ArithmeticFunctionModN(self.modulus, tuple(self(-n) for n in range(self.modulus)))

    def __repr__(self) -> str:
        shown = ", ".join(f"{complex(v):.6g}" for v in self.values)
        return f"ArithmeticFunctionModN({self.modulus}, [{shown}])"


def _exact(value, N: int) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    return CyclotomicNumber.rational(Fraction(value), N)


def delta_fn(u: int, N: int) -> ArithmeticFunctionModN:
    """Indicator of the class u mod N."""
    return ArithmeticFunctionModN(N, tuple(CyclotomicNumber.rational(1 if n == u % N else 0, N) for n in range(N)))


def hat_delta_fn(u: int, N: int) -> ArithmeticFunctionModN:
    """``n -> zeta_N^(-u n)``."""
    return ArithmeticFunctionModN(N, tuple(CyclotomicNumber.root_of_unity(-u * n, N) for n in range(N)))


def dft(alpha: ArithmeticFunctionModN) -> ArithmeticFunctionModN:
    """``n -> sum_x alpha(x) zeta_N^(-x n)``; sends delta_fn(u) to hat_delta_fn(u)."""
    N = alpha.modulus
    values = []
    for n in range(N):
        total = CyclotomicNumber(N, [])
        for x in range(N):
            total = total + alpha(x) * CyclotomicNumber.root_of_unity(-x * n, N)
        values.append(total)
    return ArithmeticFunctionModN(N, tuple(values))


def _complex(x) -> complex:
    return complex(mpmath.mpc(x))


@dataclass(frozen=True, eq=False)
class DoubleSeriesSpec:
    """``S^{t,u}_{alpha,beta}``; the level is the common modulus of alpha and beta."""

    t: complex
    u: complex
    alpha: ArithmeticFunctionModN
    beta: ArithmeticFunctionModN
    _sieve: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.alpha.modulus != self.beta.modulus:
            raise InvalidSpec("alpha and beta must share their modulus")
        object.__setattr__(self, "t", _complex(self.t))
        object.__setattr__(self, "u", _complex(self.u))

    @property
    def N(self) -> int:
        return self.alpha.modulus

    @property
    def growth_power(self) -> float:
        return max(self.t.real, 0.0) + max(self.u.real, 0.0) + 0.5

    @property
    def coefficient_bound(self) -> float:
        return 2.0 * self.alpha.max_abs * self.beta.max_abs

    def is_zero(self) -> bool:
        return self.alpha.is_zero() or self.beta.is_zero()

    def conjugate(self) -> DoubleSeriesSpec:
        """The spec whose S at i y is the complex conjugate of this one's."""
        return DoubleSeriesSpec(self.t.conjugate(), self.u.conjugate(), self.alpha.conjugate(), self.beta.conjugate())

    def coefficients(self, E: int) -> np.ndarray:
        """``c_e`` for ``0 <= e <= E`` (``c_0 = 0``)."""
        cached = self._sieve.get("coefficients")
        if cached is not None and len(cached) > E:
            return cached[: E + 1]
        size = max(E, 64, 2 * (len(cached) - 1) if cached is not None else 0)
        if size > _MAX_SIEVE:
            raise TailNotClosed(f"double series needs more than {_MAX_SIEVE} exponents", context={"E": E})
        logger.debug("sieving S coefficients up to %d (N=%d)", size, self.N)
        values = np.zeros(size + 1, dtype=np.complex128)
        alpha, beta = self.alpha.numeric, self.beta.numeric
        for m in range(1, size + 1):
            a = alpha[m % self.N]
            if a == 0:
                continue
            n = np.arange(1, size // m + 1)
            terms = a * beta[n % self.N] * (float(m) ** self.t) * np.power(n.astype(np.float64), self.u)
            values[m * n] += terms
        self._sieve["coefficients"] = values
        return values[: E + 1]


def _sum_tail(C: float, w: float, x: float, E: int) -> float:
    """Bound on ``sum_{e > E} C e^w x^e``; infinite when the ratio test fails."""
    if C == 0.0 or x == 0.0:
        return 0.0
    rho = ((E + 2) / (E + 1)) ** w * x
    if rho >= 1.0:
        return math.inf
    return C * (E + 1) ** w * x ** (E + 1) / (1.0 - rho)


def _required_exponent(spec: DoubleSeriesSpec, x: float, tol: float) -> int:
    C, w = spec.coefficient_bound, spec.growth_power
    if C == 0.0:
        return 1
    E = max(16, math.ceil(math.log(max(C, 1.0) / tol) / -math.log(x))) if x > 0 else 1
    while _sum_tail(C, w, x, E) > tol:
        E = math.ceil(E * 1.25) + 1
        if E > _MAX_SIEVE:
            raise TailNotClosed(
                "double series tail does not close",
                context={"x": x, "tol": tol, "N": spec.N},
            )
    return E


def S_at(spec: DoubleSeriesSpec, tau, cutoff: Optional[int] = None, tol: float = 1e-16) -> ComplexValue:
    """``S(tau)``; without a cutoff the truncation grows until the tail is below ``tol``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise InvalidSpec("tau must lie in the upper half-plane")
    if spec.is_zero():
        return ComplexValue(0, 0)
    x = complex(np.exp(2j * np.pi * tau / spec.N))
    E = cutoff if cutoff is not None else _required_exponent(spec, abs(x), tol)
    tail = _sum_tail(spec.coefficient_bound, spec.growth_power, abs(x), E)
    if math.isinf(tail):
        raise TailNotClosed("cutoff too small for the tail bound to close", context={"cutoff": E})
    c = spec.coefficients(E)
    powers = x ** np.arange(E + 1)
    terms = c * powers
    value = complex(np.sum(terms))
    rounding = 1e-15 * float(np.sum(np.abs(terms))) * math.log2(E + 2)
    return ComplexValue(value, tail + rounding)


def S_eval(
    spec: DoubleSeriesSpec, y: float, inverted: bool = False, cutoff: Optional[int] = None, tol: float = 1e-16
) -> ComplexValue:
    """S at ``i y``, or at ``i / y`` when ``inverted``."""
    if y <= 0:
        raise InvalidSpec("y must be positive")
    Y = 1.0 / y if inverted else y
    return S_at(spec, 1j * Y, cutoff=cutoff, tol=tol)


def S_fast(spec: DoubleSeriesSpec, Y: float) -> complex:
    """``S(i Y)`` in double precision, for quadrature integrands."""
    if spec.is_zero():
        return 0j
    x = math.exp(-2 * math.pi * Y / spec.N)
    E = _required_exponent(spec, x, _FAST_TOL)
    c = spec.coefficients(E)
    return complex(np.dot(c, x ** np.arange(E + 1, dtype=np.float64)))


def S_magnitude_bound(spec: DoubleSeriesSpec, Y: float) -> float:
    """Bound on ``|S(i Y)|`` from ``sum_e C e^w e^(-mu e)``, ``mu = 2 pi Y / N``."""
    C, w = spec.coefficient_bound, spec.growth_power
    if C == 0.0:
        return 0.0
    mu = 2 * math.pi * Y / spec.N
    peak = (w / mu) ** w * math.exp(-w) if w > 0 else 1.0
    unimodal = math.gamma(w + 1) / mu ** (w + 1) + peak
    if mu < 1.0:
        return C * unimodal
    far = math.exp(1.0 - mu) * (math.gamma(w + 1) + w**w * math.exp(-w))
    return C * min(unimodal, far)


# -- Dirichlet series and Mellin transforms ---------------------------------


def L_alpha(alpha: ArithmeticFunctionModN, s) -> ComplexValue:
    """``L(alpha, s) = sum_n alpha(n) n^-s = N^-s sum_c alpha(c) zeta(c/N, s)``."""
    N = alpha.modulus
    s = mpmath.mpc(s)
    total = ComplexValue(0, 0)
    for c in range(1, N + 1):
        value = alpha(c)
        if value.is_zero():
            continue
        total = total + hurwitz_zeta(FractionModOne.of(c, N), s).scale(value.to_complex())
    return total.scale(mpmath.power(N, -s))


def mellin_S_closed(spec: DoubleSeriesSpec, s, inverted: bool = False) -> ComplexValue:
    """``int_0^oo S(i y) y^s dy/y = (2 pi/N)^-s Gamma(s) L(alpha, s-t) L(beta, s-u)``.

    With ``inverted`` the transform of ``S(i/y)``, i.e. the same formula at -s.
    """
    s = mpmath.mpc(s)
    z = -s if inverted else s
    t, u = mpmath.mpc(spec.t), mpmath.mpc(spec.u)
    if (z - t).real <= 1 or (z - u).real <= 1:
        raise OutsideStrip(
            "Mellin closed form needs Re(s - t) > 1 and Re(s - u) > 1",
            context={"s": str(s), "inverted": inverted},
        )
    if spec.is_zero():
        return ComplexValue(0, 0)
    factor = mpmath.power(2 * mpmath.pi / spec.N, -z) * mpmath.gamma(z)
    return (L_alpha(spec.alpha, z - t) * L_alpha(spec.beta, z - u)).scale(factor)


def _lower_mellin_tail(spec: DoubleSeriesSpec, sigma: float, y_lo: float) -> float:
    """Bound on ``int_0^y_lo |S(i y)| y^(sigma-1) dy`` from the small-y magnitude bound."""
    C, w = spec.coefficient_bound, spec.growth_power
    scale = spec.N / (2 * math.pi)
    first = math.gamma(w + 1) * scale ** (w + 1) * y_lo ** (sigma - w - 1) / (sigma - w - 1)
    second = (w * scale) ** w * math.exp(-w) * y_lo ** (sigma - w) / (sigma - w) if w > 0 else y_lo**sigma / sigma
    return C * (first + second)


def mellin_S_quadrature(spec: DoubleSeriesSpec, s, inverted: bool = False, eps: float = 1e-10) -> ComplexValue:
    """The Mellin transform of ``S(i y)`` (or ``S(i/y)``) by quadrature in ``log y``."""
    s = complex(s)
    z = -s if inverted else s
    sigma = z.real
    if sigma <= spec.growth_power + 1:
        raise OutsideStrip("the Mellin integral of S needs Re(s) > w + 1", context={"s": str(s)})
    if spec.is_zero():
        return ComplexValue(0, 0)
    y_lo = 1.0
    while _lower_mellin_tail(spec, sigma, y_lo) > eps / 4:
        y_lo /= 2
    y_hi = 1.0
    while upper_tail_bound(lambda y: S_magnitude_bound(spec, y) * y ** (sigma - 1), y_hi) > eps / 4:
        y_hi *= 2
    tail = _lower_mellin_tail(spec, sigma, y_lo) + upper_tail_bound(lambda y: S_magnitude_bound(spec, y) * y ** (sigma - 1), y_hi)
    logger.debug("mellin_S_quadrature: window [%g, %g]", y_lo, y_hi)

    def integrand(y: float) -> complex:
        return S_fast(spec, y) * y ** (z - 1)

    value = integrate_log_window(integrand, y_lo, y_hi, panels_per_decade=4)
    return value + ComplexValue(0, tail)


def upper_tail_bound(bound: Callable[[float], float], y: float) -> float:
    """``int_y^oo bound`` for a bound decaying faster than ``1/y`` past y, via doubling blocks."""
    total = 0.0
    lo = y
    for _ in range(60):
        hi = 2 * lo
        piece = max(bound(lo), bound(hi)) * (hi - lo)
        total += piece
        if piece < 1e-40:
            break
        lo = hi
    return total


def lower_tail_bound(bound: Callable[[float], float], y: float) -> float:
    total = 0.0
    hi = y
    for _ in range(60):
        lo = hi / 2
        piece = max(bound(lo), bound(hi)) * (hi - lo)
        total += piece
        if piece < 1e-40:
            break
        hi = lo
    return total


def swap_side_integral(
    inverted_spec: DoubleSeriesSpec,
    straight_spec: DoubleSeriesSpec,
    s,
    eps: float = 1e-10,
) -> ComplexValue:
    """``int_0^oo S_1(i/y) S_2(i y) y^(s-1) dy`` by quadrature in ``log y``.

    The first factor decays double exponentially as y -> 0 and the second as
    y -> oo, so the integral converges for every complex s.
    """
    s = complex(s)
    if inverted_spec.is_zero() or straight_spec.is_zero():
        return ComplexValue(0, 0)
    sigma = s.real

    def bound(y: float) -> float:
        return S_magnitude_bound(inverted_spec, 1.0 / y) * S_magnitude_bound(straight_spec, y) * y ** (sigma - 1)

    y_lo, y_hi = 1.0, 1.0
    while y_lo * bound(y_lo) > eps * 1e-3:
        y_lo /= 1.5
        if y_lo < 1e-6:
            raise TailNotClosed("swap integrand does not decay near zero", context={"s": str(s)})
    while y_hi * bound(y_hi) > eps * 1e-3:
        y_hi *= 1.5
        if y_hi > 1e6:
            raise TailNotClosed("swap integrand does not decay at infinity", context={"s": str(s)})
    tail = lower_tail_bound(bound, y_lo) + upper_tail_bound(bound, y_hi)
    logger.debug("swap_side_integral: window [%g, %g], tails %.3g", y_lo, y_hi, tail)

    def integrand(y: float) -> complex:
        return S_fast(inverted_spec, 1.0 / y) * S_fast(straight_spec, y) * y ** (s - 1)

    value = integrate_log_window(integrand, y_lo, y_hi, panels_per_decade=6)
    return value + ComplexValue(0, tail)


def rz_swap_check(
    t1, u1, t2, u2,
    alpha1: ArithmeticFunctionModN,
    beta1: ArithmeticFunctionModN,
    alpha2: ArithmeticFunctionModN,
    beta2: ArithmeticFunctionModN,
    s,
    eps: float = 1e-10,
) -> IdentityCheck:
    """Both sides of the Rogers-Zudilin swap.

    ``int S^{t1,u1}_{a1,b1}(i/y) S^{t2,u2}_{a2,b2}(i y) y^(s-1) dy
      = int S^{t1+s,t2}_{a1,a2}(i y) S^{u1,u2-s}_{b1,b2}(i/y) y^(s-1) dy``
    """
    s = complex(s)
    lhs = swap_side_integral(
        DoubleSeriesSpec(t1, u1, alpha1, beta1),
        DoubleSeriesSpec(t2, u2, alpha2, beta2),
        s,
        eps,
    )
    rhs = swap_side_integral(
        DoubleSeriesSpec(u1, u2 - s, beta1, beta2),
        DoubleSeriesSpec(t1 + s, t2, alpha1, alpha2),
        s,
        eps,
    )
    return IdentityCheck("rogers-zudilin swap", lhs, rhs)


def default_oracle_cap(N: int) -> int:
    """Exponent-product cap at which the Bessel kernel is below e^-60."""
    return math.ceil((60 * N / (4 * math.pi)) ** 2)


def rz_swap_bruteforce(
    inverted_spec: DoubleSeriesSpec,
    straight_spec: DoubleSeriesSpec,
    s,
    cap: Optional[int] = None,
) -> ComplexValue:
    """The swap integral as the 4-fold sum ``sum c1(e1) c2(e2) 2 (b/a)^(s/2) K_s(2 sqrt(a b))``.

    ``a = 2 pi e2 / N`` and ``b = 2 pi e1 / N``; terms with ``e1 e2 > cap`` are dropped.
    """
    N = inverted_spec.N
    if straight_spec.N != N:
        raise InvalidSpec("both double series must share their level")
    cap = cap if cap is not None else default_oracle_cap(N)
    s = mpmath.mpc(s)
    c1 = inverted_spec.coefficients(cap)
    c2 = straight_spec.coefficients(cap)
    total = mpmath.mpc(0)
    for e1 in range(1, cap + 1):
        if c1[e1] == 0:
            continue
        for e2 in range(1, cap // e1 + 1):
            if c2[e2] == 0:
                continue
            a = 2 * mpmath.pi * e2 / N
            b = 2 * mpmath.pi * e1 / N
            kernel = 2 * mpmath.power(b / a, s / 2) * mpmath.besselk(s, 2 * mpmath.sqrt(a * b))
            total += complex(c1[e1]) * complex(c2[e2]) * kernel
    return ComplexValue(total, 1e-13 * (1 + abs(total)))


def random_arithmetic_function(N: int, rng: np.random.Generator, terms: Iterable[int] = (1, 2)) -> ArithmeticFunctionModN:
    """A random small combination of delta and hat-delta functions."""
    total = ArithmeticFunctionModN.zero(N)
    for _ in range(int(rng.choice(list(terms)))):
        u = int(rng.integers(0, N))
        weight = int(rng.integers(-2, 3)) or 1
        base = delta_fn(u, N) if rng.random() < 0.5 else hat_delta_fn(u, N)
        total = total + base.scale(weight)
    return total
