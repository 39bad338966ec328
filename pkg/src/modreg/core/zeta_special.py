"""Hurwitz zeta, periodic zeta and Bernoulli polynomials at rational arguments.

Every analytic evaluation returns a :class:`ComplexValue`, a value paired with
an absolute error bound.  Arguments ``x`` are exact rationals modulo one.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

import mpmath

from .cyclotomic import CyclotomicNumber
from .errors import InvalidSpec, OutsideConvergence, PoleAtOne, PrecisionLoss

logger = logging.getLogger(__name__)

Number = Union[int, float, complex, Fraction, mpmath.mpf, mpmath.mpc]
Method = Literal["auto", "split", "reflection", "lerch"]

_NEAR_INTEGER = 1e-3
_MAX_CORRECTIONS = 80
_GUARD_BITS = 20
_ROUNDING_ULPS = 32


@dataclass(frozen=True)
class FractionModOne:
    """A rational number in [0, 1), used as the argument x of the zeta functions."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if not 0 <= self.numerator < self.denominator:
            raise ValueError("numerator must lie in [0, denominator)")
        if self.numerator and math.gcd(self.numerator, self.denominator) != 1:
            raise ValueError("FractionModOne must be reduced")
        if self.numerator == 0 and self.denominator != 1:
            raise ValueError("zero is stored as 0/1")

    @classmethod
    def of(cls, a: Union[int, Fraction], N: int = 1) -> FractionModOne:
        """``a/N`` reduced modulo one."""
        value = Fraction(a) / N
        value -= math.floor(value)
        return cls(value.numerator, value.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __neg__(self) -> FractionModOne:
        return FractionModOne.of(-self.value)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def _mpc(value: Number) -> mpmath.mpc:
    if isinstance(value, Fraction):
        return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
    return mpmath.mpc(value)


@dataclass(frozen=True)
class ComplexValue:
    """A complex number together with an absolute error bound."""

    value: mpmath.mpc
    err: mpmath.mpf = mpmath.mpf(0)

    def __post_init__(self):
        object.__setattr__(self, "value", _mpc(self.value))
        err = mpmath.mpf(self.err)
        if not mpmath.isfinite(err) or err < 0:
            raise ValueError(f"error bound must be finite and nonnegative, got {err}")
        object.__setattr__(self, "err", err)

    @classmethod
    def exact(cls, value: Union[Number, CyclotomicNumber]) -> ComplexValue:
        if isinstance(value, CyclotomicNumber):
            value = value.to_complex()
        return cls(_mpc(value), mpmath.mpf(0))

    @property
    def re(self) -> mpmath.mpf:
        return self.value.real

    @property
    def im(self) -> mpmath.mpf:
        return self.value.imag

    def __abs__(self) -> mpmath.mpf:
        return abs(self.value)

    def _lift(self, other) -> ComplexValue | None:
        if isinstance(other, ComplexValue):
            return other
        if isinstance(other, CyclotomicNumber):
            return ComplexValue.exact(other)
        if isinstance(other, (int, float, complex, Fraction, mpmath.mpf, mpmath.mpc)):
            return ComplexValue.exact(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ComplexValue(self.value + other.value, self.err + other.err)

    __radd__ = __add__

    def __neg__(self) -> ComplexValue:
        return ComplexValue(-self.value, self.err)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ComplexValue(self.value - other.value, self.err + other.err)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return ComplexValue(self.value * other.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.err >= abs(other.value):
            raise PrecisionLoss("division by a value indistinguishable from zero")
        quotient = self.value / other.value
        err = (self.err + abs(quotient) * other.err) / (abs(other.value) - other.err)
        return ComplexValue(quotient, err)

    def scale(self, factor: Number) -> ComplexValue:
        factor = _mpc(factor)
        return ComplexValue(self.value * factor, self.err * abs(factor))

    def conjugate(self) -> ComplexValue:
        return ComplexValue(mpmath.conj(self.value), self.err)

    def to_json(self) -> dict[str, float]:
        return {"re": float(self.re), "im": float(self.im), "err": float(self.err)}


ZERO = ComplexValue.exact(0)


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of a numerical identity."""

    identity: str
    lhs: ComplexValue
    rhs: ComplexValue

    @property
    def residual(self) -> float:
        return float(abs(self.lhs.value - self.rhs.value))

    @property
    def err(self) -> float:
        return float(self.lhs.err + self.rhs.err)


# -- Bernoulli numbers and polynomials --------------------------------------


@functools.lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple[Fraction, ...]:
    """``B_0 .. B_n`` with ``B_1 = -1/2``."""
    values = [Fraction(1)]
    for m in range(1, n + 1):
        values.append(-sum(math.comb(m + 1, j) * values[j] for j in range(m)) / (m + 1))
    return tuple(values)


def bernoulli_poly(n: int, x: Union[int, Fraction]) -> Fraction:
    """Exact value of the Bernoulli polynomial ``B_n(x)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = Fraction(x)
    numbers = bernoulli_numbers(n)
    return sum((math.comb(n, j) * numbers[j] * x ** (n - j) for j in range(n + 1)), Fraction(0))


def _nonpositive_integer(s: mpmath.mpc) -> int | None:
    """``n`` when ``s == 1 - n`` for an integer ``n >= 1``."""
    if s.imag != 0 or s.real > 0 or s.real != mpmath.floor(s.real):
        return None
    return 1 - int(s.real)


def _near_integer(s: mpmath.mpc) -> bool:
    return abs(s.imag) < _NEAR_INTEGER and abs(s.real - mpmath.nint(s.real)) < _NEAR_INTEGER


def _shift(x: FractionModOne) -> Fraction:
    """The Hurwitz shift a in (0, 1]: ``{x}`` or 1 when x = 0."""
    return x.value if not x.is_zero() else Fraction(1)


# -- Hurwitz zeta -----------------------------------------------------------


def hurwitz_zeta_exact(x: FractionModOne, n: int) -> Fraction:
    """``zeta(x, 1 - n) = -B_n({x})/n`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return -bernoulli_poly(n, _shift(x)) / n


def _euler_maclaurin(a: mpmath.mpf, s: mpmath.mpc, tol: mpmath.mpf) -> ComplexValue:
    sigma = s.real
    shift = max(int(abs(s)) + 10, 10)
    while True:
        base = a + shift
        head = mpmath.fsum((a + j) ** (-s) for j in range(shift))
        total = head + base ** (1 - s) / (s - 1) + base ** (-s) / 2
        poch = s
        numbers = bernoulli_numbers(2 * _MAX_CORRECTIONS + 2)
        for i in range(1, _MAX_CORRECTIONS + 1):
            coeff = numbers[2 * i] / math.factorial(2 * i)
            total += mpmath.mpf(coeff.numerator) / coeff.denominator * poch * base ** (-s - 2 * i + 1)
            # poch becomes (s)_{2i+1}
            poch *= (s + 2 * i - 1) * (s + 2 * i)
            denominator = sigma + 2 * i + 1
            if denominator <= 0:
                continue
            bound = (
                4 * abs(poch * (s + 2 * i + 1)) / (2 * mpmath.pi) ** (2 * i + 2)
                * base ** (-sigma - 2 * i - 1) / denominator
            )
            if bound < tol:
                rounding = 16 * mpmath.eps * (abs(head) + abs(total)) * shift
                return ComplexValue(total, bound + rounding)
        if shift > 4000:
            raise PrecisionLoss(
                f"Euler-Maclaurin summation cannot reach {mpmath.nstr(tol, 3)} at s={s}",
                context={"s": str(s), "a": str(a)},
            )
        shift *= 2
        logger.debug("hurwitz_zeta: increasing shift to %d at s=%s", shift, s)


def hurwitz_zeta(x: FractionModOne, s: Number, tol: Number | None = None) -> ComplexValue:
    """Continuation of ``zeta(x, s) = sum over y > 0, y = x mod 1 of y^-s``."""
    s = _mpc(s)
    if s == 1:
        raise PoleAtOne("hurwitz_zeta has a pole at s=1", context={"x": str(x)})
    n = _nonpositive_integer(s)
    if n is not None:
        return ComplexValue.exact(hurwitz_zeta_exact(x, n))
    target = mpmath.mpf(tol) if tol is not None else mpmath.eps
    a = _shift(x)
    with mpmath.workprec(mpmath.mp.prec + 20):
        result = _euler_maclaurin(mpmath.mpf(a.numerator) / a.denominator, s, target / 4)
    return ComplexValue(+result.value, result.err + mpmath.eps * abs(result.value))


# -- periodic zeta ----------------------------------------------------------


def periodic_zeta_exact(x: FractionModOne, n: int) -> CyclotomicNumber:
    """``zhat(x, 1 - n)`` for ``n >= 1`` as an element of Q(zeta_N), x = a/N.

    Uses ``zhat(a/N, s) = N^-s sum_c zeta_N^(ac) zeta(c/N, s)`` at s = 1 - n.
    """
    N, a = x.denominator, x.numerator
    total = CyclotomicNumber(N, [])
    for c in range(1, N + 1):
        total = total + CyclotomicNumber.root_of_unity(
            a * c, N, hurwitz_zeta_exact(FractionModOne.of(c, N), n)
        )
    return total * Fraction(N) ** (n - 1)


def _split(x: FractionModOne, s: mpmath.mpc, tol) -> tuple[ComplexValue, mpmath.mpf]:
    N, a = x.denominator, x.numerator
    total = ZERO
    magnitude = mpmath.mpf(0)
    for c in range(1, N + 1):
        phase = mpmath.expjpi(mpmath.mpf(2 * a * c) / N)
        term = hurwitz_zeta(FractionModOne.of(c, N), s, tol).scale(phase)
        magnitude += abs(term.value)
        total = total + term
    factor = mpmath.power(N, -s)
    return total.scale(factor), magnitude * abs(factor)


def _reflection(x: FractionModOne, s: mpmath.mpc, tol) -> tuple[ComplexValue, mpmath.mpf]:
    left = hurwitz_zeta(x, 1 - s, tol).scale(mpmath.expjpi(-s / 2))
    right = hurwitz_zeta(-x, 1 - s, tol).scale(mpmath.expjpi(s / 2))
    factor = (2 * mpmath.pi) ** s / (mpmath.gamma(s) * (mpmath.expjpi(-s) - mpmath.expjpi(s)))
    return (left - right).scale(factor), (abs(left.value) + abs(right.value)) * abs(factor)


def _guarded(branch, x: FractionModOne, s: mpmath.mpc, tol) -> ComplexValue:
    """Run ``branch`` with guard bits; the bound covers its arithmetic and the final rounding."""
    with mpmath.workprec(mpmath.mp.prec + _GUARD_BITS):
        result, magnitude = branch(x, s, tol)
        rounding = _ROUNDING_ULPS * mpmath.eps * magnitude
        err = result.err + rounding
    value = +result.value
    return ComplexValue(value, err + mpmath.eps * abs(value))


def _lerch(x: FractionModOne, s: mpmath.mpc) -> ComplexValue:
    if s.real <= 1:
        raise OutsideConvergence("lerch evaluation of the periodic zeta needs Re(s) > 1")
    z = mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator)
    value = z * mpmath.lerchphi(z, s, 1)
    return ComplexValue(value, 8 * mpmath.eps * (1 + abs(value)))


def periodic_zeta(
    x: FractionModOne, s: Number, method: Method = "auto", tol: Number | None = None
) -> ComplexValue:
    """Continuation of ``zhat(x, s) = sum_{n>=1} e^(2 i pi n x) n^-s``."""
    s = _mpc(s)
    if x.is_zero():
        return hurwitz_zeta(x, s, tol)
    n = _nonpositive_integer(s)
    if n is not None:
        return ComplexValue.exact(periodic_zeta_exact(x, n))
    if s == 1:
        value = -mpmath.log(1 - mpmath.expjpi(2 * mpmath.mpf(x.numerator) / x.denominator))
        return ComplexValue(value, 4 * mpmath.eps * (1 + abs(value)))
    if method == "lerch":
        return _lerch(x, s)
    if method == "split":
        return _guarded(_split, x, s, tol)
    if method == "reflection":
        if _near_integer(s):
            raise PrecisionLoss("the reflection formula is singular at integer s")
        return _guarded(_reflection, x, s, tol)
    if s.real > 1 or _near_integer(s):
        return _guarded(_split, x, s, tol)
    return _guarded(_reflection, x, s, tol)


# -- regularized value at s = 1 ---------------------------------------------


def zeta_star_at_one(x: FractionModOne, method: Literal["digamma", "stencil"] = "digamma") -> ComplexValue:
    """``lim_{s->1} zeta(x, s) - 1/(s - 1)``, equal to ``-digamma({x})`` (a = 1 at x = 0)."""
    a = _shift(x)
    if method == "digamma":
        value = -mpmath.digamma(mpmath.mpf(a.numerator) / a.denominator)
        return ComplexValue(value, 4 * mpmath.eps * (1 + abs(value)))

    def regular_part(h):
        return hurwitz_zeta(x, 1 + h).value - 1 / h

    with mpmath.workprec(mpmath.mp.prec + 40):
        value = mpmath.limit(regular_part, 0, exp=True)
    return ComplexValue(+value, mpmath.mpf(10) ** (-mpmath.mp.dps // 2))


# -- identities -------------------------------------------------------------


def verify_hurwitz_formula(x: FractionModOne, s: Number) -> IdentityCheck:
    """Both sides of ``zeta(x, 1-s) = Gamma(s)/(2pi)^s (e^(-i pi s/2) zhat(x,s) + e^(i pi s/2) zhat(-x,s))``."""
    s = _mpc(s)
    if s == 0 or (s.imag == 0 and s.real < 0 and s.real == mpmath.floor(s.real)):
        raise InvalidSpec("the Hurwitz formula is evaluated away from the Gamma poles")
    lhs = hurwitz_zeta(x, 1 - s)
    hat_plus = periodic_zeta(x, s, method="split")
    hat_minus = periodic_zeta(-x, s, method="split")
    factor = mpmath.gamma(s) / (2 * mpmath.pi) ** s
    rhs = (hat_plus.scale(mpmath.expjpi(-s / 2)) + hat_minus.scale(mpmath.expjpi(s / 2))).scale(factor)
    return IdentityCheck("hurwitz functional equation", lhs, rhs)


def finite_fourier_relation_check(N: int, u: int, s: Number) -> tuple[IdentityCheck, IdentityCheck]:
    """The two discrete Fourier relations between zeta and zhat at level N.

    ``sum_x zeta_N^(xu) zeta(x/N, s) = N^s zhat(u/N, s)`` and
    ``sum_x zeta_N^(xu) zhat(x/N, s) = N^(1-s) zeta(-u/N, s)``, x running over Z/NZ.
    """
    if N < 1:
        raise ValueError("N must be positive")
    s = _mpc(s)
    first_lhs = ZERO
    second_lhs = ZERO
    for x in range(N):
        point = FractionModOne.of(x, N)
        phase = mpmath.expjpi(mpmath.mpf(2 * x * u) / N)
        first_lhs = first_lhs + hurwitz_zeta(point, s).scale(phase)
        method = "lerch" if s.real > 1 and not point.is_zero() else "auto"
        second_lhs = second_lhs + periodic_zeta(point, s, method=method).scale(phase)
    target = FractionModOne.of(u, N)
    method = "lerch" if s.real > 1 and not target.is_zero() else "auto"
    first_rhs = periodic_zeta(target, s, method=method).scale(mpmath.power(N, s))
    second_rhs = hurwitz_zeta(-target, s).scale(mpmath.power(N, 1 - s))
    return (
        IdentityCheck("finite fourier relation zeta to zhat", first_lhs, first_rhs),
        IdentityCheck("finite fourier relation zhat to zeta", second_lhs, second_rhs),
    )
