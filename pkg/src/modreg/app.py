"""Command-line application for modreg."""
from dotenv import load_dotenv

# Load environment variables first
load_dotenv()

import argparse
import logging
import sys
from typing import Optional, Sequence

import mpmath

from .commands import emit, lambda_, qexp, verify
from .core.errors import ModregError
from .models import ErrorRecord
from .settings import resolve_config

logger = logging.getLogger(__name__)

VERSION = "0.1.0"


def _common_options() -> argparse.ArgumentParser:
    """Flags shared by every command; unset flags fall back to the environment."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", dest="tolerance", default=None, help="tolerance of numeric checks (MODREG_TOL)")
    common.add_argument("--terms", dest="truncation", default=None, help="truncation order T (MODREG_TERMS)")
    common.add_argument("--prec", dest="precision", default=None, help="working precision in bits (MODREG_PREC)")
    common.add_argument("--seed", dest="seed", default=None, help="seed of randomized sweeps (MODREG_SEED)")
    common.add_argument("--format", dest="output", default=None, help="json, csv or text (MODREG_FORMAT)")
    common.add_argument("--out", dest="out", default=None, help="write the output to this file instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="log at INFO level")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modreg",
        description="Explicit modular regulators: q-expansions, L-values and identity verification",
    )
    parser.add_argument("--version", action="version", version=f"modreg {VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [_common_options()]

    # Register commands
    qexp.register(subparsers, parents)
    lambda_.register(subparsers, parents)
    verify.register(subparsers, parents)
    return parser


def _json_safe(context: dict) -> dict:
    safe = {}
    for key, value in context.items():
        if isinstance(value, (str, int, float, bool, type(None), list, dict)):
            safe[str(key)] = value
        else:
            safe[str(key)] = str(value)
    return safe


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return its exit code."""
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(
            {
                "tolerance": args.tolerance,
                "truncation": args.truncation,
                "precision": args.precision,
                "seed": args.seed,
                "output": args.output,
                "log_level": "INFO" if args.verbose else None,
            }
        )
        logging.basicConfig(
            level=config.log_level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        logging.getLogger("modreg").setLevel(config.log_level)
        mpmath.mp.prec = config.precision
        return args.handler(args, config)
    except ModregError as e:
        logger.error("%s: %s", type(e).__name__, e.detail)
        record = ErrorRecord(schema=1, error=type(e).__name__, detail=e.detail, context=_json_safe(e.context))
        emit(record.model_dump_json(by_alias=True) + "\n")
        return e.exit_code


def start():
    """Run the command line and exit with its code."""
    sys.exit(run())


if __name__ == "__main__":
    start()
