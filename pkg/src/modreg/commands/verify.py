"""``modreg verify``: run an identity suite and report every residual."""
import argparse
import csv
import io
import logging

from ..core.suites import SUITE_NAMES, SuiteOptions, run_suite
from ..models import CheckResult, RunConfig, VerificationReport
from . import emit

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "id", "identity", "residual", "tolerance", "passed",
    "lhs_re", "lhs_im", "lhs_err", "rhs_re", "rhs_im", "rhs_err", "reference",
)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=parents,
        help="run a verification suite",
        description="Exit 0 iff every residual is within its tolerance; the report goes to stdout or --out.",
    )
    parser.add_argument("suite", choices=[*SUITE_NAMES, "all"])
    parser.add_argument("--k1", type=int, default=None, help="restrict regulator sweeps to this k1")
    parser.add_argument("--k2", type=int, default=None, help="restrict regulator sweeps to this k2")
    parser.add_argument("--N", dest="level", type=int, default=None, help="restrict regulator sweeps to this level")
    parser.set_defaults(handler=run)


def build_report(suite: str, config: RunConfig, options: SuiteOptions) -> VerificationReport:
    checks = [CheckResult.from_check(check) for check in run_suite(suite, options)]
    worst = max(checks, key=lambda check: (not check.passed, check.residual), default=None)
    return VerificationReport(
        schema=1,
        suite=suite,
        config=config,
        checks=checks,
        passed=all(check.passed for check in checks),
        worst=worst,
    )


def render(report: VerificationReport, output: str) -> str:
    if output == "json":
        return report.model_dump_json(by_alias=True) + "\n"
    if output == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for check in report.checks:
            writer.writerow(
                [
                    check.id, check.identity, repr(check.residual), repr(check.tolerance), check.passed,
                    repr(check.lhs.re), repr(check.lhs.im), repr(check.lhs.err),
                    repr(check.rhs.re), repr(check.rhs.im), repr(check.rhs.err),
                    check.reference,
                ]
            )
        return buffer.getvalue()
    lines = [
        f"{'PASS' if check.passed else 'FAIL'}  {check.id}  residual={check.residual:.3e}  tol={check.tolerance:.1e}"
        for check in report.checks
    ]
    failed = sum(not check.passed for check in report.checks)
    lines.append(f"{report.suite}: {len(report.checks)} checks, {failed} failed")
    if report.worst is not None:
        lines.append(f"worst: {report.worst.id} ({report.worst.reference}) residual={report.worst.residual:.3e}")
    return "\n".join(lines) + "\n"


def run(args: argparse.Namespace, config: RunConfig) -> int:
    options = SuiteOptions(
        tolerance=config.tolerance,
        truncation=config.truncation,
        seed=config.seed,
        k1=args.k1,
        k2=args.k2,
        N=args.level,
    )
    report = build_report(args.suite, config, options)
    emit(render(report, config.output), args.out)
    if not report.passed:
        logger.error(
            "suite %s failed; worst %s (%s) residual %.3g > %.3g",
            args.suite, report.worst.id, report.worst.reference, report.worst.residual, report.worst.tolerance,
        )
        return 1
    return 0
