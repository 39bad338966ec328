"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored in the group-ring basis 1, zeta, ..., zeta^(n-1) with
rational coordinates.  That representation is not unique (the coordinates of
the N-th cyclotomic polynomial give zero), so equality and zero tests reduce
modulo Phi_n with sympy.  Arithmetic itself stays in the group ring where a
product is a cyclic convolution.
"""
from __future__ import annotations

import functools
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import mpmath
from sympy import QQ, Poly, Rational as SympyRational, cyclotomic_poly, symbols

_X = symbols("x")

Scalar = Union[int, Fraction]


@functools.lru_cache(maxsize=None)
def _modulus(order: int) -> Poly:
    return Poly(cyclotomic_poly(order, _X), _X, domain=QQ)


@functools.lru_cache(maxsize=64)
def _unit_roots(order: int, prec: int) -> tuple:
    with mpmath.workprec(prec):
        return tuple(mpmath.unitroots(order))


def _to_poly(coeffs: Sequence[Fraction]) -> Poly:
    return Poly(
        [SympyRational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0],
        _X,
        domain=QQ,
    )


def _from_poly(poly: Poly, length: int) -> tuple[Fraction, ...]:
    values = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    values += [Fraction(0)] * (length - len(values))
    return tuple(values[:length])


class CyclotomicNumber:
    """An element of Q(zeta_order) with zeta = exp(2 i pi / order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar]):
        if order < 1:
            raise ValueError("order must be positive")
        values = [Fraction(0)] * order
        for j, c in enumerate(coeffs):
            values[j % order] += Fraction(c)
        self.order = order
        self.coeffs = tuple(values)

    # -- constructors -----------------------------------------------------

    @classmethod
    def rational(cls, value: Scalar, order: int = 1) -> CyclotomicNumber:
        return cls(order, [value])

    @classmethod
    def root_of_unity(cls, exponent: int, order: int, scale: Scalar = 1) -> CyclotomicNumber:
        """``scale * zeta_order**exponent``."""
        values = [Fraction(0)] * order
        values[exponent % order] = Fraction(scale)
        return cls(order, values)

    @classmethod
    def i_power(cls, k: int) -> CyclotomicNumber:
        """The Gaussian unit ``i**k`` as an element of Q(zeta_4)."""
        return cls.root_of_unity(k, 4)

    @classmethod
    def gaussian(cls, re: Scalar, im: Scalar) -> CyclotomicNumber:
        return cls(4, [re, im])

    # -- structure --------------------------------------------------------

    def lift(self, order: int) -> CyclotomicNumber:
        """View self inside Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        step = order // self.order
        values = [Fraction(0)] * order
        for j, c in enumerate(self.coeffs):
            if c:
                values[j * step] = c
        return CyclotomicNumber(order, values)

    def reduced(self) -> tuple[Fraction, ...]:
        """Canonical coordinates in the power basis of length phi(order)."""
        degree = _modulus(self.order).degree()
        if not any(self.coeffs):
            return (Fraction(0),) * degree
        return _from_poly(_to_poly(self.coeffs).rem(_modulus(self.order)), degree)

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def is_rational(self) -> bool:
        return not any(self.reduced()[1:])

    def as_fraction(self) -> Fraction:
        values = self.reduced()
        if any(values[1:]):
            raise ValueError(f"{self!r} is not rational")
        return values[0]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber] | None:
        if isinstance(other, CyclotomicNumber):
            order = math.lcm(self.order, other.order)
            return self.lift(order), other.lift(order)
        if isinstance(other, (int, Rational)):
            return self, CyclotomicNumber.rational(Fraction(other), self.order)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return CyclotomicNumber(x.order, [c + d for c, d in zip(x.coeffs, y.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return CyclotomicNumber(x.order, [c - d for c, d in zip(x.coeffs, y.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            factor = Fraction(other)
            return CyclotomicNumber(self.order, [c * factor for c in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        n = x.order
        values = [Fraction(0)] * n
        for i, c in enumerate(x.coeffs):
            if not c:
                continue
            for j, d in enumerate(y.coeffs):
                if d:
                    values[(i + j) % n] += c * d
        return CyclotomicNumber(n, values)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        inv = _to_poly(self.coeffs).invert(_modulus(self.order))
        return CyclotomicNumber(self.order, _from_poly(inv, self.order))

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        if isinstance(other, CyclotomicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> CyclotomicNumber:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.rational(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> CyclotomicNumber:
        n = self.order
        values = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            values[(-j) % n] = c
        return CyclotomicNumber(n, values)

    def __eq__(self, other) -> bool:
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return (x - y).is_zero()

    __hash__ = None

    # -- numerics ---------------------------------------------------------

    def to_complex(self) -> mpmath.mpc:
        roots = _unit_roots(self.order, mpmath.mp.prec + 10)
        total = mpmath.mpc(0)
        for c, root in zip(self.coeffs, roots):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * root
        return +total

    def __complex__(self) -> complex:
        return complex(self.to_complex())

    def __repr__(self) -> str:
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.coeffs) if c]
        return f"CyclotomicNumber({self.order}, {' + '.join(terms) or '0'})"


def unit_fraction_ratio(exponent: int, order: int) -> CyclotomicNumber:
    """``(1 + zeta^e) / (1 - zeta^e)`` for ``zeta^e != 1``."""
    if exponent % order == 0:
        raise ZeroDivisionError("1 - zeta^e vanishes")
    one = CyclotomicNumber.rational(1, order)
    z = CyclotomicNumber.root_of_unity(exponent, order)
    return (one + z) / (one - z)
