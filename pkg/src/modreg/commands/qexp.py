"""``modreg qexp``: dump the q-expansion of one catalog series."""
import argparse
import logging

from ..core.eisenstein import EisensteinSpec, Family, build_series
from ..core.qseries import dump
from ..models import RunConfig
from . import emit

logger = logging.getLogger(__name__)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "qexp",
        parents=parents,
        help="dump the q-expansion of E, F, G or H",
        description="Print a JSON header line, then one 'exponent coefficient' line per term.",
    )
    add_series_arguments(parser)
    parser.set_defaults(handler=run)


def add_series_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("family", choices=[family.value for family in Family])
    parser.add_argument("k", type=int, help="weight")
    parser.add_argument("a", type=int)
    parser.add_argument("b", type=int)
    parser.add_argument("N", type=int, help="level parameter")


def run(args: argparse.Namespace, config: RunConfig) -> int:
    spec = EisensteinSpec(Family(args.family), args.k, args.a, args.b, args.N)
    logger.info("qexp %s, T=%d", spec, config.truncation)
    series = build_series(spec, config.truncation)
    emit(dump(series, config.truncation), args.out)
    return 0
