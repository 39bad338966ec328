"""Verification suites behind ``modreg verify``.

Each suite returns a list of :class:`SuiteCheck`, one per identity instance,
sorted by check id.  Numeric checks pass when the residual is within the
tolerance; exact checks (q-series bridges, fibre integrals) need a zero
residual.  Randomized suites draw from ``np.random.default_rng(seed)``.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import mpmath
import numpy as np

from .eisenstein import (
    EisensteinSpec,
    Family,
    atkin_lehner_numeric,
    build_series,
    constant_term,
    dft_bridge_residual,
    g_pair,
    h_pair,
    kronecker_lattice_value,
    lattice_value,
    quasi_periodicity_phase,
    slash_check_F,
)
from .errors import InvalidSpec
from .fibers import fiber_lemma_cases
from .lfunc import completed_lambda, dirichlet_L, functional_equation_check, lambda_H_closed_form, rankin_integral_check
from .qseries import qs_eval
from .real_analytic import RealAnalyticSpec, RealAnalyticVariant, fab_eab_check, fourier_expansion_check
from .regulator import (
    TERMS,
    RegulatorInput,
    cancellation_residuals,
    mellin_F_combination_closed,
    mellin_F_combination_quadrature,
    pre_swap_integral_check,
    random_admissible_input,
    theorem_both_sides,
)
from .rz_engine import (
    DoubleSeriesSpec,
    delta_fn,
    hat_delta_fn,
    random_arithmetic_function,
    rz_swap_bruteforce,
    rz_swap_check,
    swap_side_integral,
)
from .zeta_special import (
    ZERO,
    ComplexValue,
    FractionModOne,
    IdentityCheck,
    finite_fourier_relation_check,
    hurwitz_zeta,
    periodic_zeta,
    verify_hurwitz_formula,
)

logger = logging.getLogger(__name__)

SUITE_NAMES = (
    "hurwitz",
    "fourier",
    "atkin_lehner",
    "slash",
    "rz",
    "rankin",
    "fibers",
    "cancellation",
    "theorem",
    "preswap",
)


@dataclass(frozen=True)
class SuiteOptions:
    """What a suite needs from the run configuration.

    ``tolerance`` overrides the per-suite default of numeric checks when set;
    ``k1``, ``k2`` and ``N`` restrict the regulator sweeps.
    """

    tolerance: Optional[float] = None
    truncation: int = 200
    seed: int = 0
    k1: Optional[int] = None
    k2: Optional[int] = None
    N: Optional[int] = None


@dataclass(frozen=True)
class SuiteCheck:
    id: str
    identity: str
    params: dict
    lhs: ComplexValue
    rhs: ComplexValue
    residual: float
    tolerance: float
    reference: str
    exact: bool = False

    @property
    def passed(self) -> bool:
        if self.exact:
            return self.residual == 0.0
        return self.residual <= self.tolerance


@dataclass
class _Collector:
    """Accumulates the checks of one suite."""

    suite: str
    options: SuiteOptions
    default_tolerance: float
    checks: list[SuiteCheck] = field(default_factory=list)

    @property
    def tolerance(self) -> float:
        return self.options.tolerance if self.options.tolerance is not None else self.default_tolerance

    def numeric(self, check_id: str, check: IdentityCheck, params: dict, reference: str, tolerance: Optional[float] = None):
        """Record a numeric check; ``tolerance`` replaces the suite default, the run option still wins."""
        if self.options.tolerance is not None or tolerance is None:
            tolerance = self.tolerance
        self.checks.append(
            SuiteCheck(
                f"{self.suite}/{check_id}",
                check.identity,
                params,
                check.lhs,
                check.rhs,
                check.residual,
                tolerance,
                reference,
            )
        )

    def exact(self, check_id: str, identity: str, params: dict, lhs, rhs, residual: float, reference: str):
        self.checks.append(
            SuiteCheck(f"{self.suite}/{check_id}", identity, params, lhs, rhs, residual, 0.0, reference, exact=True)
        )

    def sorted(self) -> list[SuiteCheck]:
        return sorted(self.checks, key=lambda check: check.id)


def _sweep(options: SuiteOptions) -> list[tuple[int, int, int]]:
    """``(k1, k2, N)`` with ``k1 + k2 <= 4`` and ``N in {3, 5, 7}``, narrowed by the options."""
    k1s = range(5) if options.k1 is None else (options.k1,)
    k2s = range(5) if options.k2 is None else (options.k2,)
    levels = (3, 5, 7) if options.N is None else (options.N,)
    free = options.k1 is None or options.k2 is None
    return [(k1, k2, N) for k1, k2, N in itertools.product(k1s, k2s, levels) if not free or k1 + k2 <= 4]


def _inputs(options: SuiteOptions, per_case: int = 5) -> list[RegulatorInput]:
    rng = np.random.default_rng(options.seed)
    return [random_admissible_input(k1, k2, N, rng) for k1, k2, N in _sweep(options) for _ in range(per_case)]


# -- suites -----------------------------------------------------------------


def hurwitz_suite(options: SuiteOptions) -> list[SuiteCheck]:
    out = _Collector("hurwitz", options, 1e-10)
    points = (2, 3, 1.5, 2 + 1j, 0.5 + 2j)
    for numerator, s in itertools.product(range(1, 6), points):
        x = FractionModOne.of(numerator, 7)
        out.numeric(
            f"formula/x={numerator}_7/s={s}",
            verify_hurwitz_formula(x, s),
            {"x": f"{numerator}/7", "s": str(s)},
            "zeta_special.verify_hurwitz_formula",
        )
    for N, u, s in itertools.product((3, 5), (1, 2), (3, 2.5 + 1j)):
        first, second = finite_fourier_relation_check(N, u, s)
        params = {"N": N, "u": u, "s": str(s)}
        out.numeric(f"finite_fourier/N={N}/u={u}/s={s}/forward", first, params, "zeta_special.finite_fourier_relation_check")
        out.numeric(f"finite_fourier/N={N}/u={u}/s={s}/inverse", second, params, "zeta_special.finite_fourier_relation_check")
    return out.sorted()


def _series_residual(series) -> float:
    if series.is_zero():
        return 0.0
    return float(np.max(np.abs(series.numeric)))


def _zero_row(spec: EisensteinSpec) -> Optional[ComplexValue]:
    """The n = 0 row of the lattice sum, ``(k-1)!/(-2 i pi)^k sum_m (m + z)^-k chi(m)``, for k >= 2.

    None where that row is empty (E with a != 0) or only conditionally convergent (k = 1).
    """
    k, a, b, N = spec.k, spec.a, spec.b, spec.N
    if k == 1 or (spec.family is Family.E and a):
        return None
    factor = mpmath.factorial(k - 1) / mpmath.power(-2j * mpmath.pi, k)
    sign = (-1) ** k
    if spec.family is Family.E:
        row = hurwitz_zeta(FractionModOne.of(b, N), k) + hurwitz_zeta(FractionModOne.of(-b, N), k).scale(sign)
    elif spec.family is Family.H:
        row = hurwitz_zeta(FractionModOne.of(-b, N), k) + hurwitz_zeta(FractionModOne.of(b, N), k).scale(sign)
    elif spec.family is Family.G and b:
        return ZERO
    else:
        row = periodic_zeta(FractionModOne.of(-a, N), k) + periodic_zeta(FractionModOne.of(a, N), k).scale(sign)
        if spec.family is Family.G:
            factor *= mpmath.power(N, k - 1)
    return row.scale(factor)


def _constant_terms(out: _Collector) -> None:
    for family, N, k in itertools.product(Family, (3, 5), range(1, 6)):
        for a, b in itertools.product(range(N), repeat=2):
            try:
                spec = EisensteinSpec(family, k, a, b, N)
            except InvalidSpec:
                continue
            expected = _zero_row(spec)
            if expected is None:
                continue
            check = IdentityCheck("constant term against the zero lattice row", ComplexValue.exact(constant_term(spec)), expected)
            out.numeric(f"constant/{family.value}/N={N}/k={k}/a={a}/b={b}", check, spec.as_dict(), "eisenstein.constant_term", tolerance=1e-12)
    for N, k in itertools.product((3, 5), range(1, 6)):
        for a, b in itertools.product(range(N), repeat=2):
            if k == 2 and (a, b) == (0, 0):
                continue
            plus = build_series(EisensteinSpec(Family.H, k, a, b, N), 20)
            minus = build_series(EisensteinSpec(Family.H, k, -a, -b, N), 20)
            out.exact(
                f"constant/H_parity/N={N}/k={k}/a={a}/b={b}",
                "H_{-a,-b} = (-1)^k H_{a,b}",
                {"k": k, "a": a, "b": b, "N": N},
                ZERO,
                ZERO,
                _series_residual(minus - plus * ((-1) ** k)),
                "eisenstein.build_series",
            )


def fourier_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """Real-analytic Fourier expansions, Kronecker structure, DFT bridges, holomorphic lattice values and constant terms."""
    out = _Collector("fourier", options, 1e-7)
    rng = np.random.default_rng(options.seed)
    tau = mpmath.mpc(0.15, 1.1)
    for index in range(10):
        N = int(rng.choice([3, 5, 7]))
        a, b = 0, 0
        while a + b == 0:
            a, b = int(rng.integers(0, 3)), int(rng.integers(0, 3))
        variant = RealAnalyticVariant.E_SERIES if index % 2 == 0 else RealAnalyticVariant.F_SERIES
        spec = RealAnalyticSpec(a, b, int(rng.integers(0, N)), int(rng.integers(0, N)), N, variant)
        params = {"a": a, "b": b, "u": [spec.u1, spec.u2], "N": N, "variant": variant.value}
        out.numeric(f"real_analytic/{index:02d}", fourier_expansion_check(spec, tau), params, "real_analytic.fourier_expansion_check")
    spec = RealAnalyticSpec(1, 0, 1, 2, 3, RealAnalyticVariant.F_SERIES)
    out.numeric("fab_eab", fab_eab_check(spec, tau), {"a": 1, "b": 0, "u": [1, 2], "N": 3}, "real_analytic.fab_eab_check")

    z = mpmath.mpc(0.13, 0.07)
    u = (Fraction(1, 5), Fraction(2, 5))
    for k, lam in itertools.product((3, 4), ((1, 0), (0, 1), (1, 1))):
        shifted = kronecker_lattice_value(k, tau, z + lam[0] + lam[1] * tau, u)
        base = kronecker_lattice_value(k, tau, z, u)
        check = IdentityCheck("kronecker quasi-periodicity", shifted, base.scale(quasi_periodicity_phase(tau, lam, u)))
        out.numeric(f"kronecker/k={k}/lambda={lam[0]},{lam[1]}", check, {"k": k, "lambda": list(lam)}, "eisenstein.kronecker_lattice_value")
    for k in (3, 4):
        moved = (u[0] + 1, u[1] - 1)
        check = IdentityCheck(
            "kronecker u-periodicity",
            kronecker_lattice_value(k, tau, z, moved),
            kronecker_lattice_value(k, tau, z, u),
        )
        out.numeric(f"kronecker/k={k}/u_shift", check, {"k": k}, "eisenstein.kronecker_lattice_value")

    T = 40
    for N, k, inverse in itertools.product((3, 5), range(1, 6), (False, True)):
        for a, b in itertools.product(range(N), repeat=2):
            if k == 2 and a == 0:
                continue
            residual = _series_residual(dft_bridge_residual(k, a, b, N, T, inverse=inverse))
            direction = "inverse" if inverse else "forward"
            out.exact(
                f"dft_bridge/{direction}/N={N}/k={k}/a={a}/b={b}",
                f"{direction} discrete fourier bridge between F and G",
                {"k": k, "a": a, "b": b, "N": N, "T": T},
                ZERO,
                ZERO,
                residual,
                "eisenstein.dft_bridge_residual",
            )

    point = mpmath.mpc(0.1, 0.9)
    for family, N, k in itertools.product((Family.E, Family.F), (3, 5), (3, 4, 5)):
        for a, b in ((0, 1), (1, 0), (1, 2), (2, 2)):
            spec = EisensteinSpec(family, k, a, b, N)
            check = IdentityCheck(
                "q-expansion against lattice sum",
                qs_eval(build_series(spec, options.truncation), point),
                lattice_value(spec, point),
            )
            out.numeric(f"lattice/{family.value}/N={N}/k={k}/a={a}/b={b}", check, spec.as_dict(), "eisenstein.lattice_value")
    _constant_terms(out)
    return out.sorted()


def atkin_lehner_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """``W_{N^2} G = (i^k/N) H`` at three points, and the functional equation of Lambda."""
    out = _Collector("atkin_lehner", options, 1e-8)
    T = options.truncation
    for N, k in itertools.product((3, 5), range(1, 5)):
        points = [mpmath.mpc(0, 1) / N, mpmath.mpc(0.1, 0.9) / N, mpmath.mpc(-0.2, 1.1) / N]
        for a, b in itertools.product(range(N), repeat=2):
            if k == 2 and a == 0:
                continue
            pair = g_pair(k, a, b, N, T)
            for index, tau in enumerate(points):
                check = IdentityCheck(
                    "atkin-lehner image of G",
                    atkin_lehner_numeric(pair.f, N * N, k, tau),
                    qs_eval(pair.wf, tau),
                )
                out.numeric(
                    f"W/N={N}/k={k}/a={a}/b={b}/tau={index}",
                    check,
                    {"k": k, "a": a, "b": b, "N": N, "tau": str(complex(tau))},
                    "eisenstein.g_pair",
                )
    for index, (family, k, a, b, N, s) in enumerate(
        (
            ("G", 1, 1, 2, 3, 0.5 + 0.5j),
            ("G", 2, 1, 0, 3, 1.5),
            ("G", 3, 2, 1, 3, 1.2 + 0.3j),
            ("H", 1, 1, 1, 3, 0.3),
            ("H", 2, 1, 0, 3, 0.7 + 1j),
            ("H", 3, 1, 2, 5, 4),
            ("G", 4, 1, 1, 3, 2.5 + 0.5j),
            ("H", 4, 2, 0, 3, 1.5),
            ("G", 1, 0, 1, 5, 0.25),
        )
    ):
        pair = (g_pair if family == "G" else h_pair)(k, a, b, N, T)
        out.numeric(
            f"functional_equation/{index}",
            functional_equation_check(pair, s),
            {"family": family, "k": k, "a": a, "b": b, "N": N, "s": str(s)},
            "lfunc.functional_equation_check",
            tolerance=1e-9,
        )
    return out.sorted()


def slash_suite(options: SuiteOptions) -> list[SuiteCheck]:
    out = _Collector("slash", options, 1e-8)
    matrices = (((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1)), ((1, 0), (3, 1)))
    tau = mpmath.mpc(0.1, 0.9)
    for N, k in itertools.product((3, 5), (1, 3, 4)):
        for (a, b), g in itertools.product(((0, 1), (1, 0), (1, 2), (2, 1)), matrices):
            difference = slash_check_F(k, a, b, N, g, tau, options.truncation)
            check = IdentityCheck("slash action on F", difference, ZERO)
            label = "".join(str(x) for row in g for x in row)
            out.numeric(
                f"F/N={N}/k={k}/a={a}/b={b}/g={label}",
                check,
                {"k": k, "a": a, "b": b, "N": N, "g": [list(row) for row in g]},
                "eisenstein.slash_check_F",
            )
    return out.sorted()


def rz_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """Twenty seeded random swaps, and the Bessel-kernel oracle at s = 0."""
    out = _Collector("rz", options, 1e-7)
    rng = np.random.default_rng(options.seed)
    for draw in range(20):
        N = int(rng.choice([3, 4, 5, 7]))
        t1, u1, t2, u2 = (int(x) for x in rng.integers(0, 3, size=4))
        s = complex(round(float(rng.uniform(-1, 1)), 3), round(float(rng.uniform(-0.5, 0.5)), 3))
        functions = [random_arithmetic_function(N, rng) for _ in range(4)]
        check = rz_swap_check(t1, u1, t2, u2, *functions, s, eps=1e-10)
        out.numeric(
            f"swap/{draw:02d}",
            check,
            {"N": N, "t1": t1, "u1": u1, "t2": t2, "u2": u2, "s": str(s)},
            "rz_engine.rz_swap_check",
        )
    oracles = (
        (DoubleSeriesSpec(0, 0, delta_fn(1, 3), delta_fn(1, 3)), DoubleSeriesSpec(0, 0, delta_fn(1, 3), delta_fn(2, 3))),
        (DoubleSeriesSpec(0, 1, hat_delta_fn(1, 3), delta_fn(2, 3)), DoubleSeriesSpec(1, 0, delta_fn(1, 3), hat_delta_fn(2, 3))),
        (DoubleSeriesSpec(1, 0, delta_fn(2, 5), delta_fn(1, 5)), DoubleSeriesSpec(0, 1, delta_fn(3, 5), delta_fn(4, 5))),
    )
    for index, (inverted, straight) in enumerate(oracles):
        check = IdentityCheck(
            "swap integral against bessel oracle",
            swap_side_integral(inverted, straight, 0, eps=1e-12),
            rz_swap_bruteforce(inverted, straight, 0),
        )
        out.numeric(f"oracle/{index}", check, {"N": inverted.N, "s": 0}, "rz_engine.rz_swap_bruteforce", tolerance=1e-10)
    return out.sorted()


def rankin_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """The Rankin lemma on catalog pairs, Lambda(H) against its closed form and L(H) against zhat products."""
    out = _Collector("rankin", options, 1e-7)
    T = options.truncation
    pairs = (
        (("G", 1, 1, 0), ("G", 1, 0, 1)),
        (("G", 1, 1, 1), ("G", 2, 1, 2)),
        (("H", 2, 1, 0), ("G", 1, 1, 2)),
        (("G", 3, 2, 1), ("H", 1, 1, 1)),
    )
    s = 1.5 + 0.5j
    for index, (first, second) in enumerate(pairs):
        f = (g_pair if first[0] == "G" else h_pair)(*first[1:], 3, T)
        g = (g_pair if second[0] == "G" else h_pair)(*second[1:], 3, T)
        generic, regularized = rankin_integral_check(f, g, s)
        params = {"f": list(first), "g": list(second), "N": 3, "s": str(s)}
        out.numeric(f"lemma/{index}/generic", generic, params, "lfunc.rankin_integral_check")
        out.numeric(f"lemma/{index}/regularized", regularized, params, "lfunc.rankin_integral_check")

    for index, (k, a, b, N, s) in enumerate(
        ((3, 1, 2, 5, 4), (1, 1, 1, 5, 2.5), (2, 1, 0, 3, 3), (3, 2, 0, 5, 1.5 + 1j), (4, 1, 3, 5, 5), (1, 2, 3, 5, 0.5 + 0.5j))
    ):
        pair = h_pair(k, a, b, N, T)
        check = IdentityCheck(
            "lambda of H against closed form",
            completed_lambda(pair.f, pair.wf, pair.level, k, s).value,
            lambda_H_closed_form(k, a, b, N, s),
        )
        out.numeric(
            f"lambda_H/{index}",
            check,
            {"k": k, "a": a, "b": b, "N": N, "s": str(s)},
            "lfunc.lambda_H_closed_form",
            tolerance=1e-8,
        )
    for k, a, b, N in ((1, 1, 2, 5), (2, 1, 1, 3), (2, 2, 0, 5)):
        s = mpmath.mpc(8)
        closed = lambda_H_closed_form(k, a, b, N, s)
        normalization = mpmath.power(N, s) * mpmath.power(2 * mpmath.pi, -s) * mpmath.gamma(s)
        check = IdentityCheck(
            "dirichlet series of H against zhat products",
            dirichlet_L(build_series(EisensteinSpec(Family.H, k, a, b, N), T), s),
            closed.scale(1 / normalization),
        )
        out.numeric(
            f"dirichlet_H/k={k}/a={a}/b={b}/N={N}",
            check,
            {"k": k, "a": a, "b": b, "N": N, "s": 8},
            "lfunc.dirichlet_L",
            tolerance=1e-8,
        )
    return out.sorted()


def _monomial_residual(computed, expected) -> float:
    if computed == expected:
        return 0.0
    if (computed.y_power, computed.four_pi_over_N_power) != (expected.y_power, expected.four_pi_over_N_power):
        return float("inf")
    return float(abs(complex(computed.coefficient.to_complex()) - complex(expected.coefficient.to_complex())))


def fibers_suite(options: SuiteOptions) -> list[SuiteCheck]:
    out = _Collector("fibers", options, 0.0)
    for label, computed, expected in fiber_lemma_cases(6):
        out.exact(
            label,
            "fibre integral of psi-forms",
            {"y_power": expected.y_power, "four_pi_over_N_power": expected.four_pi_over_N_power},
            ComplexValue.exact(computed.coefficient),
            ComplexValue.exact(expected.coefficient),
            _monomial_residual(computed, expected),
            "fibers.fiber_lemma_cases",
        )
    return out.sorted()


def cancellation_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """The cancellations among the constant-term contributions B to F."""
    out = _Collector("cancellation", options, 1e-8)
    for index, inp in enumerate(_inputs(options)):
        terms = {name: term(inp) for name, term in TERMS.items()}
        for name, residual in sorted(cancellation_residuals(inp, terms).items()):
            out.checks.append(
                SuiteCheck(
                    f"cancellation/{inp.k1}{inp.k2}/N={inp.N}/{index:03d}/{name}",
                    f"{name} = 0",
                    inp.as_dict(),
                    ComplexValue(residual, 0),
                    ZERO,
                    residual,
                    out.tolerance,
                    "regulator.cancellation_residuals",
                )
            )
    return out.sorted()


def theorem_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """Both computation paths of the main formula over the sweep."""
    out = _Collector("theorem", options, 1e-7)
    for index, inp in enumerate(_inputs(options)):
        report = theorem_both_sides(inp)
        out.numeric(
            f"{inp.k1}{inp.k2}/N={inp.N}/{index:03d}",
            report.theorem_check,
            inp.as_dict(),
            "regulator.theorem_both_sides",
        )
    return out.sorted()


_PRE_SWAP_POINTS = {(0, 0): -6.0, (1, 0): -7.0, (0, 1): -7.0}


def preswap_suite(options: SuiteOptions) -> list[SuiteCheck]:
    """The y-integral before the swap, and the Mellin transform of the F-combination."""
    out = _Collector("preswap", options, 1e-6)
    rng = np.random.default_rng(options.seed)
    for (k1, k2), s in _PRE_SWAP_POINTS.items():
        inp = random_admissible_input(k1, k2, 5, rng)
        for point in (s, s - 1):
            out.numeric(
                f"integral/{k1}{k2}/s={point:g}",
                pre_swap_integral_check(inp, point),
                {**inp.as_dict(), "s": point},
                "regulator.pre_swap_integral_check",
            )
    for k, s in itertools.product((0, 1), (-1.5, -2.5 + 0.5j)):
        check = IdentityCheck(
            "mellin transform of the F-combination",
            mellin_F_combination_quadrature(k, 1, 2, 5, s),
            mellin_F_combination_closed(k, 1, 2, 5, s),
        )
        out.numeric(
            f"mellin_F/k={k}/s={s}",
            check,
            {"k": k, "a": 1, "b": 2, "N": 5, "s": str(s)},
            "regulator.mellin_F_combination_closed",
            tolerance=1e-8,
        )
    return out.sorted()


SUITES: dict[str, Callable[[SuiteOptions], list[SuiteCheck]]] = {
    "hurwitz": hurwitz_suite,
    "fourier": fourier_suite,
    "atkin_lehner": atkin_lehner_suite,
    "slash": slash_suite,
    "rz": rz_suite,
    "rankin": rankin_suite,
    "fibers": fibers_suite,
    "cancellation": cancellation_suite,
    "theorem": theorem_suite,
    "preswap": preswap_suite,
}


def run_suite(name: str, options: SuiteOptions) -> list[SuiteCheck]:
    """Run one suite, or every suite for ``all``; checks come back sorted by id."""
    if name == "all":
        checks = [check for suite in SUITE_NAMES for check in run_suite(suite, options)]
        return sorted(checks, key=lambda check: check.id)
    if name not in SUITES:
        raise InvalidSpec(f"unknown suite {name!r}", context={"suites": [*SUITE_NAMES, "all"]})
    logger.info("suite %s: start", name)
    checks = SUITES[name](options)
    failed = [check for check in checks if not check.passed]
    worst = max(checks, key=lambda check: check.residual - check.tolerance, default=None)
    logger.info(
        "suite %s: %d checks, %d failed, worst %s",
        name, len(checks), len(failed), worst.id if worst else "-",
    )
    return checks
