"""Integrals of the psi-forms over the torus fibres of the Shokurov cycle.

On the fibre above ``i y`` the coordinates are ``z_j = i t_j y`` with
``t_j in [0, 1]``, so ``dz_j`` pulls back to ``i y dt_j`` and ``dz_j bar`` to
``-i y dt_j``.  Forms are expanded exactly over the Gaussian rationals; every
pulled-back form of degree n carries the factor ``y^n``, tracked separately.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from sympy.combinatorics import Permutation

from .cyclotomic import CyclotomicNumber
from .errors import InvalidSpec

GAUSSIAN = 4


class RightForm(str, Enum):
    """The form pulled back along the second projection."""

    PSI_K2_0 = "psi_k2_0"
    PSI_0_K2 = "psi_0_k2"


def _sign(order: tuple[int, ...]) -> int:
    """Signature of the permutation sorting ``order``."""
    if len(order) < 2:
        return 1
    ranks = sorted(range(len(order)), key=order.__getitem__)
    return Permutation(ranks).signature()


def _gaussian(value) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value.lift(GAUSSIAN)
    return CyclotomicNumber.rational(Fraction(value), GAUSSIAN)


@dataclass(frozen=True)
class PulledBackForm:
    """``y^degree * sum_I c_I dt_I`` with I increasing multi-indices of length ``degree``."""

    degree: int
    terms: tuple[tuple[tuple[int, ...], CyclotomicNumber], ...]

    @classmethod
    def from_dict(cls, degree: int, terms: dict) -> PulledBackForm:
        kept = tuple(sorted((index, c) for index, c in terms.items() if not c.is_zero()))
        return cls(degree, kept)

    def as_dict(self) -> dict[tuple[int, ...], CyclotomicNumber]:
        return dict(self.terms)

    def __add__(self, other: PulledBackForm) -> PulledBackForm:
        if self.degree != other.degree:
            raise InvalidSpec("only forms of equal degree can be added")
        total = self.as_dict()
        for index, c in other.terms:
            total[index] = total[index] + c if index in total else c
        return PulledBackForm.from_dict(self.degree, total)

    def scale(self, factor) -> PulledBackForm:
        factor = _gaussian(factor)
        return PulledBackForm.from_dict(self.degree, {index: c * factor for index, c in self.terms})

    def conjugate(self) -> PulledBackForm:
        return PulledBackForm(self.degree, tuple((index, c.conjugate()) for index, c in self.terms))

    def wedge(self, other: PulledBackForm) -> PulledBackForm:
        total: dict[tuple[int, ...], CyclotomicNumber] = {}
        for (left, c), (right, d) in itertools.product(self.terms, other.terms):
            joined = left + right
            if len(set(joined)) < len(joined):
                continue
            key = tuple(sorted(joined))
            value = c * d * _sign(joined)
            total[key] = total[key] + value if key in total else value
        return PulledBackForm.from_dict(self.degree + other.degree, total)

    __xor__ = wedge

    def integrate(self) -> CyclotomicNumber:
        """Coefficient of ``y^degree`` in the integral over the unit cube ``[0,1]^degree``."""
        top = tuple(range(self.degree))
        for index, c in self.terms:
            if index != top:
                raise InvalidSpec("only top-degree forms on the fibre can be integrated")
            return c
        return _gaussian(0)


@functools.lru_cache(maxsize=None)
def pullback_psi(a: int, b: int, offset: int = 0) -> PulledBackForm:
    """``psi_{a,b}`` on the coordinates ``offset .. offset + a + b - 1``, pulled back to the fibre.

    ``psi_{a,b} = (1/n!) sum_sigma eps(sigma) dzbar_sigma(1) ... dzbar_sigma(b) dz_sigma(b+1) ... dz_sigma(n)``.
    """
    if a < 0 or b < 0:
        raise InvalidSpec(f"psi_(a,b) needs a, b >= 0, got ({a}, {b})")
    n = a + b
    holomorphic = CyclotomicNumber.i_power(1)
    antiholomorphic = CyclotomicNumber.i_power(3)
    total: dict[tuple[int, ...], CyclotomicNumber] = {}
    for sigma in itertools.permutations(range(n)):
        coefficient = _gaussian(Permutation(list(sigma)).signature() if n > 1 else 1)
        for position, _ in enumerate(sigma):
            coefficient = coefficient * (antiholomorphic if position < b else holomorphic)
        order = tuple(offset + j for j in sigma)
        key = tuple(sorted(order))
        value = coefficient * _sign(order)
        total[key] = total[key] + value if key in total else value
    return PulledBackForm.from_dict(n, total).scale(Fraction(1, math.factorial(n)))


def _right(k1: int, k2: int, right_form: RightForm) -> PulledBackForm:
    right_form = RightForm(right_form)
    if right_form is RightForm.PSI_K2_0:
        return pullback_psi(k2, 0, k1)
    return pullback_psi(0, k2, k1)


@dataclass(frozen=True)
class FiberMonomial:
    """``coefficient * y^y_power * (4 pi/N)^four_pi_over_N_power``."""

    coefficient: CyclotomicNumber
    y_power: int
    four_pi_over_N_power: int = 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberMonomial):
            return NotImplemented
        if self.coefficient.is_zero() and other.coefficient.is_zero():
            return True
        return (
            self.coefficient == other.coefficient
            and self.y_power == other.y_power
            and self.four_pi_over_N_power == other.four_pi_over_N_power
        )

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return f"({complex(self.coefficient)}) y^{self.y_power} (4pi/N)^{self.four_pi_over_N_power}"


def _check_degrees(k1: int, k2: int):
    if k1 < 0 or k2 < 0:
        raise InvalidSpec(f"weights k1, k2 must be nonnegative, got ({k1}, {k2})")


def fiber_integral_psi(
    k1: int, k2: int, a: int, right_form: RightForm = RightForm.PSI_K2_0, conjugate_left: bool = False
) -> FiberMonomial:
    """``int p1* psi_{a,k1-a} ^ p2* psi`` over the fibre, by expanding the wedge product."""
    _check_degrees(k1, k2)
    if not 0 <= a <= k1:
        raise InvalidSpec(f"a must lie in [0, k1] = [0, {k1}], got {a}")
    left = pullback_psi(a, k1 - a, 0)
    if conjugate_left:
        left = left.conjugate()
    form = left ^ _right(k1, k2, right_form)
    return FiberMonomial(form.integrate(), k1 + k2)


def fiber_lemma_value(
    k1: int, k2: int, a: int, right_form: RightForm = RightForm.PSI_K2_0, conjugate_left: bool = False
) -> FiberMonomial:
    """Closed form of :func:`fiber_integral_psi`: ``(-1)^(k1-a) (i y)^k`` and its companions."""
    left = CyclotomicNumber.i_power(k1) * (-1) ** (k1 - a)
    if conjugate_left:
        left = left.conjugate()
    right = CyclotomicNumber.i_power(k2 if RightForm(right_form) is RightForm.PSI_K2_0 else -k2)
    return FiberMonomial(left * right, k1 + k2)


def omega_form(k1: int, ell: int) -> PulledBackForm:
    """``sum_{a=ell}^{k1} psi_{a,k1-a} / ((k1-a)! (a-ell)!)``, the form part of Omega_ell."""
    if not 0 <= ell <= k1:
        raise InvalidSpec(f"ell must lie in [0, k1] = [0, {k1}], got {ell}")
    total = PulledBackForm(k1, ())
    for a in range(ell, k1 + 1):
        weight = Fraction(1, math.factorial(k1 - a) * math.factorial(a - ell))
        total = total + pullback_psi(a, k1 - a, 0).scale(weight)
    return total


def omega_fiber_integral(
    k1: int, k2: int, ell: int, right_form: RightForm = RightForm.PSI_K2_0, conjugate: bool = False
) -> FiberMonomial:
    """``int Omega_ell ^ p2* psi`` (or with ``conj(Omega_ell)``) over the fibre.

    ``Omega_ell = ((k1-ell)!/ell!) (4 pi/N)^(ell+1) y^-ell sum_a psi_{a,k1-a}/((k1-a)!(a-ell)!)``.
    """
    _check_degrees(k1, k2)
    form = omega_form(k1, ell)
    if conjugate:
        form = form.conjugate()
    integral = (form ^ _right(k1, k2, right_form)).integrate()
    factor = Fraction(math.factorial(k1 - ell), math.factorial(ell))
    return FiberMonomial(integral * factor, k1 + k2 - ell, ell + 1)


def omega_lemma_value(
    k1: int, k2: int, ell: int, right_form: RightForm = RightForm.PSI_K2_0, conjugate: bool = False
) -> FiberMonomial:
    """Zero for ``ell < k1``; ``+-i^k/k1! (4 pi/N)^(k1+1) y^k2`` for ``ell = k1``."""
    if ell < k1:
        return FiberMonomial(_gaussian(0), k2, ell + 1)
    sign = 1
    if RightForm(right_form) is RightForm.PSI_0_K2:
        sign *= (-1) ** k2
    if conjugate:
        sign *= (-1) ** k1
    value = CyclotomicNumber.i_power(k1 + k2) * Fraction(sign, math.factorial(k1))
    return FiberMonomial(value, k2, k1 + 1)


def fiber_lemma_cases(max_k: int):
    """Every ``(label, computed, expected)`` triple of both fibre lemmas for ``k1 + k2 <= max_k``."""
    for k in range(max_k + 1):
        for k1 in range(k + 1):
            k2 = k - k1
            for right_form, conjugate in itertools.product(RightForm, (False, True)):
                tag = f"k1={k1},k2={k2},{right_form.value},{'conj' if conjugate else 'plain'}"
                for a in range(k1 + 1):
                    yield (
                        f"psi:{tag},a={a}",
                        fiber_integral_psi(k1, k2, a, right_form, conjugate),
                        fiber_lemma_value(k1, k2, a, right_form, conjugate),
                    )
                for ell in range(k1 + 1):
                    yield (
                        f"omega:{tag},ell={ell}",
                        omega_fiber_integral(k1, k2, ell, right_form, conjugate),
                        omega_lemma_value(k1, k2, ell, right_form, conjugate),
                    )
