"""Tests for the verification suites and the run configuration."""
import pytest

from modreg.core.errors import InvalidSpec
from modreg.core.eisenstein import EisensteinSpec, Family, constant_term
from modreg.core.suites import SUITE_NAMES, SUITES, SuiteOptions, _inputs, _sweep, _zero_row, run_suite
from modreg.models import CheckResult, RunConfig
from modreg.settings import resolve_config


def test_every_suite_is_registered():
    assert set(SUITES) == set(SUITE_NAMES)


def test_unknown_suite():
    with pytest.raises(InvalidSpec):
        run_suite("nope", SuiteOptions())


def test_hurwitz_suite_passes():
    checks = run_suite("hurwitz", SuiteOptions())
    assert checks
    assert all(check.id.startswith("hurwitz/") for check in checks)
    assert [check.id for check in checks] == sorted(check.id for check in checks)
    assert all(check.passed for check in checks)
    assert {check.tolerance for check in checks} == {1e-10}


def test_run_tolerance_overrides_suite_default():
    checks = run_suite("hurwitz", SuiteOptions(tolerance=0.5))
    assert {check.tolerance for check in checks} == {0.5}


def test_sweep_defaults_and_narrowing():
    cases = _sweep(SuiteOptions())
    assert all(k1 + k2 <= 4 for k1, k2, _ in cases)
    assert len(cases) == 15 * 3
    assert _sweep(SuiteOptions(k1=3, k2=4, N=5)) == [(3, 4, 5)]
    assert {N for _, _, N in _sweep(SuiteOptions(k1=1))} == {3, 5, 7}
    assert all(k1 == 1 and k2 <= 3 for k1, k2, _ in _sweep(SuiteOptions(k1=1)))


def test_inputs_are_seeded():
    options = SuiteOptions(k1=0, k2=0, N=5, seed=7)
    first, second = _inputs(options), _inputs(options)
    assert [inp.as_dict() for inp in first] == [inp.as_dict() for inp in second]
    assert len(first) == 5


def test_fibers_suite_is_exact():
    checks = run_suite("fibers", SuiteOptions())
    assert all(check.exact and check.residual == 0.0 for check in checks)
    result = CheckResult.from_check(checks[0])
    assert result.passed and result.tolerance == 0.0


def test_config_defaults(monkeypatch):
    for variable in ("MODREG_TOL", "MODREG_TERMS", "MODREG_PREC", "MODREG_SEED", "MODREG_FORMAT", "MODREG_LOG_LEVEL"):
        monkeypatch.delenv(variable, raising=False)
    config = resolve_config()
    assert config == RunConfig()
    assert config.truncation == 200 and config.precision == 106 and config.tolerance is None


def test_config_from_environment(monkeypatch):
    monkeypatch.setenv("MODREG_TERMS", "120")
    monkeypatch.setenv("MODREG_FORMAT", "CSV")
    monkeypatch.setenv("MODREG_LOG_LEVEL", "debug")
    config = resolve_config({"seed": 3, "tolerance": None})
    assert (config.truncation, config.output, config.log_level, config.seed) == (120, "csv", "DEBUG", 3)


@pytest.mark.parametrize("values", [{"precision": 20}, {"output": "xml"}, {"tolerance": 0}])
def test_invalid_config(values):
    with pytest.raises(InvalidSpec):
        resolve_config(values)


@pytest.mark.parametrize(
    "family,k,a,b",
    [("E", 3, 0, 2), ("E", 4, 0, 0), ("F", 2, 1, 3), ("F", 5, 0, 1), ("G", 4, 2, 0), ("G", 3, 1, 1), ("H", 3, 1, 2), ("H", 2, 2, 0)],
)
def test_constant_terms_match_zero_lattice_row(family, k, a, b):
    spec = EisensteinSpec(family, k, a, b, 5)
    assert abs(constant_term(spec).to_complex() - _zero_row(spec).value) < 1e-20


def test_zero_row_skips_conditionally_convergent_cases():
    assert _zero_row(EisensteinSpec(Family.G, 1, 1, 0, 5)) is None
    assert _zero_row(EisensteinSpec(Family.E, 3, 1, 0, 5)) is None
