"""Truncated Fourier series in q^(1/D) with exact or complex coefficients."""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Mapping, Optional, Union

import mpmath
import numpy as np

from .cyclotomic import CyclotomicNumber
from .errors import DivergentTail
from .zeta_special import ComplexValue

logger = logging.getLogger(__name__)

Coefficient = Union[Fraction, CyclotomicNumber, mpmath.mpc]


def _is_zero(c: Coefficient) -> bool:
    if isinstance(c, CyclotomicNumber):
        return not any(c.coeffs) or c.is_zero()
    return c == 0


def _to_mpc(c: Coefficient) -> mpmath.mpc:
    if isinstance(c, CyclotomicNumber):
        return c.to_complex()
    if isinstance(c, Rational):
        return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
    return mpmath.mpc(c)


def _normalize(c) -> Coefficient:
    if isinstance(c, (CyclotomicNumber, mpmath.mpc)):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    return mpmath.mpc(c)


def _cadd(x: Coefficient, y: Coefficient) -> Coefficient:
    if isinstance(x, mpmath.mpc) or isinstance(y, mpmath.mpc):
        return _to_mpc(x) + _to_mpc(y)
    return x + y


def _cmul(x: Coefficient, y: Coefficient) -> Coefficient:
    if isinstance(x, mpmath.mpc) or isinstance(y, mpmath.mpc):
        return _to_mpc(x) * _to_mpc(y)
    return x * y


def _is_exact_rational(c: Coefficient) -> bool:
    return isinstance(c, Fraction)


@dataclass(frozen=True, eq=False)
class FourierQSeries:
    """``sum_e c_e q^(e/D)`` with every coefficient of exponent ``e < truncation`` known.

    Exponents are stored as numerators over ``denominator``; the truncation is
    in the same units.  ``level``, ``weight``, ``family`` and ``labels`` are
    metadata; ``quasi_modular_correction`` is the coefficient of ``1/Im(tau)``
    carried by the weight-2 E series.
    """

    denominator: int
    coeffs: Mapping[int, Coefficient]
    truncation: int
    level: int = 1
    weight: int = 0
    family: str = ""
    labels: tuple[int, ...] = ()
    quasi_modular_correction: Fraction = Fraction(0)

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be positive")
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")
        cleaned = {}
        for e, c in self.coeffs.items():
            if e < 0:
                raise ValueError("negative exponents are not supported")
            if e >= self.truncation:
                continue
            c = _normalize(c)
            if isinstance(c, CyclotomicNumber) and not any(c.coeffs):
                continue
            if not isinstance(c, CyclotomicNumber) and c == 0:
                continue
            cleaned[e] = c
        object.__setattr__(self, "coeffs", dict(sorted(cleaned.items())))

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value, truncation: int, denominator: int = 1, **meta) -> FourierQSeries:
        return cls(denominator, {0: value}, truncation, **meta)

    @classmethod
    def zero(cls, truncation: int, denominator: int = 1, **meta) -> FourierQSeries:
        return cls(denominator, {}, truncation, **meta)

    def with_meta(self, **meta) -> FourierQSeries:
        values = {
            "level": self.level,
            "weight": self.weight,
            "family": self.family,
            "labels": self.labels,
            "quasi_modular_correction": self.quasi_modular_correction,
        }
        values.update(meta)
        return FourierQSeries(self.denominator, self.coeffs, self.truncation, **values)

    # -- structure --------------------------------------------------------

    def coefficient(self, e: int) -> Coefficient:
        if e >= self.truncation:
            raise IndexError(f"coefficient of exponent {e}/{self.denominator} is beyond the truncation")
        return self.coeffs.get(e, Fraction(0))

    @property
    def constant_term(self) -> Coefficient:
        return self.coefficient(0) if self.truncation > 0 else Fraction(0)

    def min_exponent(self) -> int:
        """Smallest exponent with a nonzero coefficient, or the truncation for a zero series."""
        for e, c in self.coeffs.items():
            if not _is_zero(c):
                return e
        return self.truncation

    def is_exact(self) -> bool:
        return not any(isinstance(c, mpmath.mpc) for c in self.coeffs.values())

    def is_rational(self) -> bool:
        return all(_is_exact_rational(c) for c in self.coeffs.values())

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs.values())

    def rescale(self, denominator: int) -> FourierQSeries:
        """The same series written over ``denominator``, a multiple of ``self.denominator``."""
        if denominator % self.denominator:
            raise ValueError(f"cannot rescale q^(1/{self.denominator}) to q^(1/{denominator})")
        step = denominator // self.denominator
        if step == 1:
            return self
        return FourierQSeries(
            denominator,
            {e * step: c for e, c in self.coeffs.items()},
            self.truncation * step,
            self.level,
            self.weight,
            self.family,
            self.labels,
            self.quasi_modular_correction,
        )

    def substitute(self, denominator: int) -> FourierQSeries:
        """Reinterpret the exponents over a new denominator: ``f(tau) -> f(tau * D / denominator)``."""
        return FourierQSeries(
            denominator,
            self.coeffs,
            self.truncation,
            self.level,
            self.weight,
            self.family,
            self.labels,
            self.quasi_modular_correction,
        )

    def truncate(self, truncation: int) -> FourierQSeries:
        return FourierQSeries(
            self.denominator,
            self.coeffs,
            min(truncation, self.truncation),
            self.level,
            self.weight,
            self.family,
            self.labels,
            self.quasi_modular_correction,
        )

    def conjugate_coefficients(self) -> FourierQSeries:
        def conj(c):
            if isinstance(c, CyclotomicNumber):
                return c.conjugate()
            if isinstance(c, mpmath.mpc):
                return mpmath.conj(c)
            return c

        return FourierQSeries(
            self.denominator,
            {e: conj(c) for e, c in self.coeffs.items()},
            self.truncation,
            self.level,
            self.weight,
            self.family,
            self.labels,
            self.quasi_modular_correction,
        )

    # -- numerics ---------------------------------------------------------

    @cached_property
    def numeric(self) -> np.ndarray:
        """Dense complex coefficient vector of length ``truncation``."""
        values = np.zeros(self.truncation, dtype=np.complex128)
        for e, c in self.coeffs.items():
            values[e] = complex(_to_mpc(c))
        return values

    @cached_property
    def growth_constant(self) -> float:
        """``max |c_e| / e^w`` over e >= 1, with w the weight metadata."""
        w = max(self.weight, 0)
        best = 0.0
        for e, c in self.coeffs.items():
            if e:
                best = max(best, float(abs(_to_mpc(c))) / float(e) ** w)
        return best

    def tail_bound(self, abs_x: float) -> float:
        """Bound on ``sum_{e >= T} |c_e| |x|^e`` assuming ``|c_e| <= C e^w``."""
        T = self.truncation
        C = self.growth_constant
        if C == 0.0 or abs_x == 0.0:
            return 0.0
        w = max(self.weight, 0)
        rho = ((T + 1) / T) ** w * abs_x
        if rho >= 1.0:
            raise DivergentTail(
                f"tail of q-series does not close at |x|={abs_x:.3g} with T={T}",
                context={"truncation": T, "abs_x": abs_x},
            )
        return C * T**w * abs_x**T / (1.0 - rho)

    # -- operators --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, FourierQSeries):
            return qs_add(self, other)
        return qs_add(self, FourierQSeries.constant(other, self.truncation, self.denominator))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, FourierQSeries):
            return qs_sub(self, other)
        return qs_sub(self, FourierQSeries.constant(other, self.truncation, self.denominator))

    def __neg__(self):
        return qs_scale(self, Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, FourierQSeries):
            return qs_mul(self, other)
        return qs_scale(self, other)

    def __rmul__(self, other):
        return qs_scale(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FourierQSeries):
            return NotImplemented
        return qs_sub(self, other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"FourierQSeries(D={self.denominator}, T={self.truncation}, level={self.level}, "
            f"weight={self.weight}, family={self.family!r}, terms={len(self.coeffs)})"
        )


def _meta(f: FourierQSeries, g: FourierQSeries, weight: Optional[int] = None) -> dict:
    same = f.family == g.family and f.labels == g.labels
    return {
        "level": math.lcm(f.level, g.level),
        "weight": f.weight if weight is None else weight,
        "family": f.family if same else "",
        "labels": f.labels if same else (),
    }


def _common(f: FourierQSeries, g: FourierQSeries) -> tuple[FourierQSeries, FourierQSeries]:
    D = math.lcm(f.denominator, g.denominator)
    return f.rescale(D), g.rescale(D)


def qs_add(f: FourierQSeries, g: FourierQSeries) -> FourierQSeries:
    f, g = _common(f, g)
    T = min(f.truncation, g.truncation)
    coeffs = dict(f.coeffs)
    for e, c in g.coeffs.items():
        coeffs[e] = _cadd(coeffs[e], c) if e in coeffs else c
    return FourierQSeries(
        f.denominator,
        coeffs,
        T,
        quasi_modular_correction=f.quasi_modular_correction + g.quasi_modular_correction,
        **_meta(f, g),
    )


def qs_scale(f: FourierQSeries, factor) -> FourierQSeries:
    factor = _normalize(factor)
    return FourierQSeries(
        f.denominator,
        {e: _cmul(c, factor) for e, c in f.coeffs.items()},
        f.truncation,
        f.level,
        f.weight,
        f.family,
        f.labels,
        f.quasi_modular_correction * factor if isinstance(factor, Fraction) else f.quasi_modular_correction,
    )


def qs_sub(f: FourierQSeries, g: FourierQSeries) -> FourierQSeries:
    return qs_add(f, qs_scale(g, Fraction(-1)))


def qs_mul(f: FourierQSeries, g: FourierQSeries) -> FourierQSeries:
    """Cauchy product, known up to ``min(T_f + emin(g), T_g + emin(f))``.

    Products of exact rational series stay exact; as soon as one factor has
    non-rational coefficients the product is accumulated numerically.
    """
    f, g = _common(f, g)
    emin_f, emin_g = f.min_exponent(), g.min_exponent()
    T = min(f.truncation + emin_g, g.truncation + emin_f)
    meta = _meta(f, g, weight=f.weight + g.weight)
    if f.is_rational() and g.is_rational():
        coeffs: dict[int, Coefficient] = {}
        for e1, c1 in f.coeffs.items():
            if e1 >= T:
                break
            for e2, c2 in g.coeffs.items():
                e = e1 + e2
                if e >= T:
                    break
                coeffs[e] = coeffs.get(e, Fraction(0)) + c1 * c2
        return FourierQSeries(f.denominator, coeffs, T, **meta)
    with mpmath.workprec(mpmath.mp.prec):
        left = {e: _to_mpc(c) for e, c in f.coeffs.items() if e < T}
        right = {e: _to_mpc(c) for e, c in g.coeffs.items() if e < T}
        coeffs = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                e = e1 + e2
                if e >= T:
                    break
                coeffs[e] = coeffs.get(e, mpmath.mpc(0)) + c1 * c2
    return FourierQSeries(f.denominator, coeffs, T, **meta)


def qs_star(f: FourierQSeries) -> FourierQSeries:
    """``f* = f - a_0(f)``."""
    return FourierQSeries(
        f.denominator,
        {e: c for e, c in f.coeffs.items() if e},
        f.truncation,
        f.level,
        f.weight,
        f.family,
        f.labels,
        f.quasi_modular_correction,
    )


def qs_eval(f: FourierQSeries, tau, include_correction: bool = False) -> ComplexValue:
    """Evaluate at ``q = e^(2 i pi tau)`` with a geometric tail bound in the error."""
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    x = mpmath.expjpi(2 * tau / f.denominator)
    total = mpmath.mpc(0)
    magnitude = mpmath.mpf(0)
    for e, c in f.coeffs.items():
        term = _to_mpc(c) * x**e
        total += term
        magnitude += abs(term)
    err = mpmath.mpf(f.tail_bound(float(abs(x)))) + 8 * mpmath.eps * (magnitude + 1) * max(len(f.coeffs), 1)
    if include_correction and f.quasi_modular_correction:
        c = f.quasi_modular_correction
        total += mpmath.mpf(c.numerator) / c.denominator / (mpmath.pi * tau.imag)
    return ComplexValue(total, err)


def qs_eval_fast(f: FourierQSeries, tau: complex) -> complex:
    """Double-precision evaluation by Horner's rule, for quadrature integrands."""
    x = np.exp(2j * np.pi * complex(tau) / f.denominator)
    if f.truncation == 0:
        return 0j
    return complex(np.polyval(f.numeric[::-1], x))


def series_envelope(f: FourierQSeries, y: float) -> tuple[float, float]:
    """``(A, lam)`` with ``|f*(i y')| <= A e^(-lam y')`` for every ``y' >= y``."""
    star = qs_star(f)
    emin = star.min_exponent()
    if emin >= star.truncation:
        emin = star.truncation
    lam = 2 * math.pi * emin / star.denominator
    decay = math.exp(-2 * math.pi * y / star.denominator)
    A = sum(
        float(abs(_to_mpc(c))) * decay ** (e - emin) for e, c in star.coeffs.items()
    )
    A += star.tail_bound(decay) / decay**emin
    return A, lam


def _format_coefficient(c: Coefficient) -> str:
    if isinstance(c, CyclotomicNumber) and c.is_rational():
        c = c.as_fraction()
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    value = _to_mpc(c)
    return f"{mpmath.nstr(value.real, 17)} {mpmath.nstr(value.imag, 17)}"


def dump(f: FourierQSeries, terms: Optional[int] = None) -> str:
    """Plain-text dump: a JSON header line, then ``e_num/e_den coefficient`` for every e < T."""
    a, b = (f.labels + (None, None))[:2]
    header = {
        "level": f.level,
        "weight": f.weight,
        "family": f.family,
        "a": a,
        "b": b,
        "truncation": str(Fraction(f.truncation, f.denominator)),
    }
    count = f.truncation if terms is None else min(terms, f.truncation)
    lines = [json.dumps(header, sort_keys=True)]
    for e in range(count):
        exponent = Fraction(e, f.denominator)
        lines.append(f"{exponent.numerator}/{exponent.denominator} {_format_coefficient(f.coefficient(e))}")
    return "\n".join(lines) + "\n"
