"""Holomorphic Eisenstein series E, F, G, H: q-expansions, lattice sums and modularity checks.

E and F are expansions in q^(1/N) with coefficients in Q(zeta_N); G and H are
expansions in q at level N^2, G with rational coefficients.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import mpmath

from .cyclotomic import CyclotomicNumber, unit_fraction_ratio
from .errors import InvalidSpec, NonConvergent
from .qseries import FourierQSeries, qs_eval, qs_scale
from .zeta_special import (
    ComplexValue,
    FractionModOne,
    bernoulli_poly,
    periodic_zeta_exact,
)

logger = logging.getLogger(__name__)


class Family(str, Enum):
    E = "E"
    F = "F"
    G = "G"
    H = "H"


@dataclass(frozen=True)
class EisensteinSpec:
    """One series ``X^(k)_{a,b}`` of level N, labels reduced mod N."""

    family: Family
    k: int
    a: int
    b: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.N < 3:
            raise InvalidSpec(f"level N must be at least 3, got {self.N}")
        if self.k < 1:
            raise InvalidSpec(f"weight k must be positive, got {self.k}")
        object.__setattr__(self, "a", self.a % self.N)
        object.__setattr__(self, "b", self.b % self.N)
        if self.k == 2:
            if self.family in (Family.F, Family.H) and self.a == 0 and self.b == 0:
                raise InvalidSpec(
                    f"{self.family.value}^(2)_(a,b) requires (a,b) != (0,0)",
                    context=self.as_dict(),
                )
            if self.family is Family.G and self.a == 0:
                raise InvalidSpec(
                    "G^(2)_(a,b) requires a != 0 (weight 2 G-series are modular only for a != 0)",
                    context=self.as_dict(),
                )

    @property
    def level(self) -> int:
        return self.N if self.family in (Family.E, Family.F) else self.N * self.N

    @property
    def denominator(self) -> int:
        return self.N if self.family in (Family.E, Family.F) else 1

    @property
    def quasi_modular(self) -> bool:
        return self.family is Family.E and self.k == 2

    def as_dict(self) -> dict:
        return {"family": self.family.value, "k": self.k, "a": self.a, "b": self.b, "N": self.N}

    def __str__(self) -> str:
        return f"{self.family.value}^({self.k})_({self.a},{self.b}) N={self.N}"


# -- constant terms ---------------------------------------------------------


def _frac(a: int, N: int) -> Fraction:
    return FractionModOne.of(a, N).value


def _weight_one_constant(spec: EisensteinSpec) -> CyclotomicNumber:
    N, a, b = spec.N, spec.a, spec.b
    zero = CyclotomicNumber(N, [])
    if spec.family in (Family.E, Family.F):
        if a == 0 and b == 0:
            return zero
        if a == 0:
            return unit_fraction_ratio(b, N) * Fraction(1, 2)
        return CyclotomicNumber.rational(Fraction(1, 2) - _frac(a, N), N)
    if spec.family is Family.G:
        if a == 0 and b == 0:
            return zero
        if a == 0:
            return CyclotomicNumber.rational(Fraction(1, 2) - _frac(b, N), N)
        if b == 0:
            return CyclotomicNumber.rational(Fraction(1, 2) - _frac(a, N), N)
        return zero
    # H
    total = zero
    if a:
        total = total - unit_fraction_ratio(a, N) * Fraction(1, 2)
    if b:
        total = total - unit_fraction_ratio(b, N) * Fraction(1, 2)
    return total


def _zhat_exact(x: FractionModOne, n: int, N: int) -> CyclotomicNumber:
    return periodic_zeta_exact(x, n).lift(N)


def constant_term(spec: EisensteinSpec) -> CyclotomicNumber:
    """``a_0`` of the series, exactly, as an element of Q(zeta_N)."""
    N, k, a, b = spec.N, spec.k, spec.a, spec.b
    if k == 1:
        return _weight_one_constant(spec)
    if spec.family is Family.E:
        if a == 0:
            return _zhat_exact(FractionModOne.of(b, N), k, N)
        return CyclotomicNumber.rational(Fraction(-1, 12) if k == 2 else 0, N)
    if spec.family is Family.F:
        return CyclotomicNumber.rational(-bernoulli_poly(k, _frac(a, N)) / k, N)
    if spec.family is Family.G:
        if b == 0:
            return CyclotomicNumber.rational(-Fraction(N) ** (k - 1) * bernoulli_poly(k, _frac(a, N)) / k, N)
        return CyclotomicNumber(N, [])
    return _zhat_exact(FractionModOne.of(-b, N), k, N)


# -- q-expansions -----------------------------------------------------------


def _accumulate(spec: EisensteinSpec, T: int) -> dict[int, list[int]]:
    """Integer coordinates over 1, zeta_N, ..., zeta_N^(N-1) of the non-constant coefficients."""
    N, k, a, b = spec.N, spec.k, spec.a, spec.b
    sign = -1 if k % 2 else 1
    vectors: dict[int, list[int]] = {}

    def bump(e: int, power: int, amount: int):
        vectors.setdefault(e, [0] * N)[power % N] += amount

    for m in range(1, T):
        for n in range(1, (T - 1) // m + 1):
            e = m * n
            if spec.family is Family.E:
                if m % N == a:
                    bump(e, b * n, n ** (k - 1))
                if m % N == (-a) % N:
                    bump(e, -b * n, sign * n ** (k - 1))
            elif spec.family is Family.F:
                if n % N == a:
                    bump(e, b * m, n ** (k - 1))
                if n % N == (-a) % N:
                    bump(e, -b * m, sign * n ** (k - 1))
            elif spec.family is Family.G:
                if m % N == a and n % N == b:
                    bump(e, 0, m ** (k - 1))
                if m % N == (-a) % N and n % N == (-b) % N:
                    bump(e, 0, sign * m ** (k - 1))
            else:
                bump(e, -a * m - b * n, n ** (k - 1))
                bump(e, a * m + b * n, sign * n ** (k - 1))
    return vectors


@functools.lru_cache(maxsize=512)
def build_series(spec: EisensteinSpec, T: int) -> FourierQSeries:
    """The q-expansion of ``spec`` with every coefficient of exponent < T (in 1/D units)."""
    if T <= 0:
        raise InvalidSpec("truncation must be positive")
    logger.debug("build_series %s T=%d", spec, T)
    vectors = _accumulate(spec, T)
    scale = Fraction(spec.N) ** (1 - spec.k) if spec.family is Family.F else Fraction(1)
    coeffs: dict[int, object] = {}
    for e, vector in vectors.items():
        if not any(vector):
            continue
        if spec.family is Family.G:
            coeffs[e] = Fraction(vector[0])
        else:
            coeffs[e] = CyclotomicNumber(spec.N, vector) * scale
    a0 = constant_term(spec)
    if spec.family is Family.G:
        coeffs[0] = a0.as_fraction()
    else:
        coeffs[0] = a0
    return FourierQSeries(
        spec.denominator,
        coeffs,
        T,
        level=spec.level,
        weight=spec.k,
        family=spec.family.value,
        labels=(spec.a, spec.b),
        quasi_modular_correction=Fraction(1, 4) if spec.quasi_modular else Fraction(0),
    )


def dft_bridge_residual(k: int, a: int, b: int, N: int, T: int, inverse: bool = False) -> FourierQSeries:
    """Exact difference of the two sides of the discrete Fourier bridge between F and G.

    Forward: ``F_{a,b}(tau) - N^(1-k) sum_c zeta^(bc) G_{a,c}(tau/N)``.
    Inverse: ``G_{a,b}(tau/N) - N^(k-2) sum_c zeta^(-bc) F_{a,c}(tau)``.
    Both are series in q^(1/N); a zero result means the identity holds up to T.
    """
    def g_over_n(c: int) -> FourierQSeries:
        return build_series(EisensteinSpec(Family.G, k, a, c, N), T).substitute(N).with_meta(level=N)

    def f_series(c: int) -> FourierQSeries:
        return build_series(EisensteinSpec(Family.F, k, a, c, N), T).with_meta(level=N)

    if not inverse:
        total = FourierQSeries.zero(T, N, level=N, weight=k)
        for c in range(N):
            total = total + qs_scale(g_over_n(c), CyclotomicNumber.root_of_unity(b * c, N))
        return f_series(b) - qs_scale(total, Fraction(N) ** (1 - k))
    total = FourierQSeries.zero(T, N, level=N, weight=k)
    for c in range(N):
        total = total + qs_scale(f_series(c), CyclotomicNumber.root_of_unity(-b * c, N))
    return g_over_n(b) - qs_scale(total, Fraction(N) ** (k - 2))


# -- Atkin-Lehner pairs -----------------------------------------------------


@dataclass(frozen=True)
class ModularPair:
    """A form together with its exact image under the Atkin-Lehner involution W_level."""

    f: FourierQSeries
    wf: FourierQSeries
    level: int
    weight: int

    def _check(self, other: ModularPair):
        if (self.level, self.weight) != (other.level, other.weight):
            raise InvalidSpec(
                "modular pairs of different level or weight cannot be added",
                context={"left": (self.level, self.weight), "right": (other.level, other.weight)},
            )

    def __add__(self, other: ModularPair) -> ModularPair:
        self._check(other)
        return ModularPair(self.f + other.f, self.wf + other.wf, self.level, self.weight)

    def __sub__(self, other: ModularPair) -> ModularPair:
        self._check(other)
        return ModularPair(self.f - other.f, self.wf - other.wf, self.level, self.weight)

    def __neg__(self) -> ModularPair:
        return ModularPair(-self.f, -self.wf, self.level, self.weight)

    def scale(self, factor) -> ModularPair:
        return ModularPair(qs_scale(self.f, factor), qs_scale(self.wf, factor), self.level, self.weight)

    def __mul__(self, other: ModularPair) -> ModularPair:
        if self.level != other.level:
            raise InvalidSpec("modular pairs of different level cannot be multiplied")
        return ModularPair(self.f * other.f, self.wf * other.wf, self.level, self.weight + other.weight)

    def swapped(self) -> ModularPair:
        """``(W f, f)``; W is an involution."""
        return ModularPair(self.wf, self.f, self.level, self.weight)


def g_pair(k: int, a: int, b: int, N: int, T: int) -> ModularPair:
    """``(G, W G)`` with ``W_{N^2} G^(k)_{a,b} = (i^k/N) H^(k)_{a,b}``."""
    g = build_series(EisensteinSpec(Family.G, k, a, b, N), T)
    h = build_series(EisensteinSpec(Family.H, k, a, b, N), T)
    factor = CyclotomicNumber.i_power(k) * Fraction(1, N)
    return ModularPair(g, qs_scale(h, factor), N * N, k)


def h_pair(k: int, a: int, b: int, N: int, T: int) -> ModularPair:
    """``(H, W H)`` with ``W_{N^2} H^(k)_{a,b} = N i^(-k) G^(k)_{a,b}``."""
    if k == 2 and a % N == 0:
        raise InvalidSpec(
            "H^(2)_(0,b) has no W-partner in the catalog: W H^(2)_(a,b) is a multiple of G^(2)_(a,b), which needs a != 0",
            context={"k": k, "a": a, "b": b, "N": N},
        )
    h = build_series(EisensteinSpec(Family.H, k, a, b, N), T)
    g = build_series(EisensteinSpec(Family.G, k, a, b, N), T)
    factor = CyclotomicNumber.i_power(-k) * N
    return ModularPair(h, qs_scale(g, factor), N * N, k)


def atkin_lehner_numeric(
    f: Union[FourierQSeries, Callable[[mpmath.mpc], ComplexValue]],
    M: int,
    k: int,
    tau,
) -> ComplexValue:
    """``(W_M f)(tau) = i^k M^(-k/2) tau^(-k) f(-1/(M tau))``."""
    tau = mpmath.mpc(tau)
    image = -1 / (M * tau)
    value = qs_eval(f, image) if isinstance(f, FourierQSeries) else f(image)
    factor = mpmath.power(1j, k) * mpmath.power(M, -mpmath.mpf(k) / 2) * mpmath.power(tau, -k)
    return value.scale(factor)


# -- F values, slash action -------------------------------------------------


def evaluate_F(k: int, a: int, b: int, N: int, tau, T: int) -> ComplexValue:
    """``F^(k)_{a,b}(tau)``, through ``F_{a,b}(tau) = (-1/tau)^k F_{b,-a}(-1/tau)`` when that raises Im."""
    tau = mpmath.mpc(tau)
    inverted = -1 / tau
    if inverted.imag > tau.imag:
        series = build_series(EisensteinSpec(Family.F, k, b, -a, N), T)
        return qs_eval(series, inverted).scale(mpmath.power(inverted, k))
    return qs_eval(build_series(EisensteinSpec(Family.F, k, a, b, N), T), tau)


Matrix = Sequence[Sequence[int]]


def slash_check_F(k: int, a: int, b: int, N: int, g: Matrix, tau, T: int = 200) -> ComplexValue:
    """``(c tau + d)^(-k) F_{a,b}(g tau) - F_{(a,b) g}(tau)``; its absolute value is the residual."""
    (g11, g12), (g21, g22) = g
    if g11 * g22 - g12 * g21 != 1:
        raise InvalidSpec("g must have determinant 1", context={"g": [list(g[0]), list(g[1])]})
    EisensteinSpec(Family.F, k, a, b, N)
    tau = mpmath.mpc(tau)
    if g21 == 0 and g11 == 1 and g12 == 0:
        return ComplexValue(0, 0)
    moved = (g11 * tau + g12) / (g21 * tau + g22)
    lhs = evaluate_F(k, a, b, N, moved, T).scale(mpmath.power(g21 * tau + g22, -k))
    a2, b2 = (a * g11 + b * g21) % N, (a * g12 + b * g22) % N
    rhs = evaluate_F(k, a2, b2, N, tau, T)
    return lhs - rhs


# -- Eisenstein-Kronecker lattice sums --------------------------------------


def _rational_coordinates(u, tau: mpmath.mpc) -> tuple[Fraction, Fraction]:
    """``(x1, x2)`` with ``u = x1 + x2 tau``; u must be a torsion point."""
    if isinstance(u, tuple):
        return Fraction(u[0]), Fraction(u[1])
    u = mpmath.mpc(u)
    x2 = u.imag / tau.imag
    x1 = u.real - x2 * tau.real
    coordinates = []
    for x in (x1, x2):
        q = Fraction(float(x)).limit_denominator(10**6)
        if abs(x - mpmath.mpf(q.numerator) / q.denominator) > mpmath.mpf(10) ** -12:
            raise InvalidSpec("lattice sums are evaluated at torsion points u only", context={"u": str(u)})
        coordinates.append(q)
    return coordinates[0], coordinates[1]


def row_sum(power: int, c: mpmath.mpc) -> mpmath.mpc:
    """``sum_{j in Z} (j + c)^(-power)`` for ``power >= 2``, omitting the term j = -c."""
    if abs(c.imag) < mpmath.mpf(10) ** -20 and abs(c.real - mpmath.nint(c.real)) < mpmath.mpf(10) ** -20:
        return (1 + (-1) ** power) * mpmath.zeta(power)
    sign = -1 if power % 2 else 1
    return (sign * mpmath.psi(power - 1, c) + mpmath.psi(power - 1, 1 - c)) / math.factorial(power - 1)


def _row_bound(k: int, t: float) -> float:
    """Bound of ``|sum_j (j + c)^(-k)|`` at ``|Im c| = t >= 1/2``."""
    x = math.exp(-2 * math.pi * t)
    return (2 * math.pi) ** k / math.factorial(k - 1) * float(mpmath.polylog(1 - k, x))


def kronecker_lattice_value(
    k: int,
    tau,
    z,
    u=(Fraction(0), Fraction(0)),
    cutoff: Optional[int] = None,
    tol: float = 1e-20,
) -> ComplexValue:
    """``K_k(k, tau, z, u) = (k-1)!/(-2 i pi)^k sum'_w (w + z)^(-k) chi(w)`` over ``w = m + n tau``.

    ``chi(m + n tau) = exp(2 i pi (n x1 - m x2))`` for ``u = x1 + x2 tau``.  Rows
    of fixed n are summed in closed form over the classes of m modulo the
    denominator of x2; rows are added until the row bound closes below ``tol``.
    """
    if k <= 2:
        raise NonConvergent(f"the Kronecker lattice sum converges absolutely only for k >= 3, got k={k}")
    tau = mpmath.mpc(tau)
    z = mpmath.mpc(z)
    x1, x2 = _rational_coordinates(u, tau)
    M = x2.denominator
    y = float(tau.imag)
    shift = float(z.imag) / y
    if cutoff is None:
        cutoff = 1
        while _row_bound(k, max(0.5, (cutoff + 1 - abs(shift)) * y / M)) * M * 2 / (
            1 - math.exp(-2 * math.pi * y / M)
        ) > tol:
            cutoff += 1
            if cutoff > 10**5:
                raise NonConvergent("lattice rows do not decay", context={"tau": str(tau)})
    total = mpmath.mpc(0)
    with mpmath.workprec(mpmath.mp.prec + 20):
        for n in range(-cutoff, cutoff + 1):
            row = mpmath.mpc(0)
            for r in range(M):
                c = (r + n * tau + z) / M
                row += mpmath.expjpi(-2 * r * mpmath.mpf(x2.numerator) / x2.denominator) * row_sum(k, c)
            phase = mpmath.expjpi(2 * n * mpmath.mpf(x1.numerator) / x1.denominator)
            total += phase * row / mpmath.power(M, k)
        factor = math.factorial(k - 1) / mpmath.power(-2j * mpmath.pi, k)
        value = +(total * factor)
    t_edge = max(0.5, (cutoff + 1 - abs(shift)) * y / M)
    tail = _row_bound(k, t_edge) * 2 / (1 - math.exp(-2 * math.pi * y / M)) / M ** (k - 1)
    tail *= float(abs(factor))
    return ComplexValue(value, tail + 64 * float(mpmath.eps) * (1 + float(abs(value))))


def lattice_value(spec: EisensteinSpec, tau) -> ComplexValue:
    """E or F through the Kronecker lattice sum (weight >= 3)."""
    tau = mpmath.mpc(tau)
    if spec.family is Family.E:
        return kronecker_lattice_value(spec.k, tau, (spec.a * tau + spec.b) / spec.N)
    if spec.family is Family.F:
        u = (Fraction(spec.b, spec.N), Fraction(spec.a, spec.N))
        return kronecker_lattice_value(spec.k, tau, 0, u)
    raise InvalidSpec("lattice sums are defined for the E and F families")


def quasi_periodicity_phase(tau, lam: tuple[int, int], u: tuple[Fraction, Fraction]) -> mpmath.mpc:
    """``exp(2 i pi (conj(lam) u - lam conj(u)) / (tau - conj(tau)))`` for ``lam = m + n tau``."""
    tau = mpmath.mpc(tau)
    lam_c = lam[0] + lam[1] * tau
    u_c = mpmath.mpf(u[0].numerator) / u[0].denominator + mpmath.mpf(u[1].numerator) / u[1].denominator * tau
    return mpmath.exp(2j * mpmath.pi * (mpmath.conj(lam_c) * u_c - lam_c * mpmath.conj(u_c)) / (tau - mpmath.conj(tau)))
