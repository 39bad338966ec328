"""``modreg lambda``: completed L-values of G/H series and their products."""
import argparse
import logging

import mpmath

from ..core.eisenstein import Family, ModularPair, g_pair, h_pair
from ..core.errors import InvalidSpec
from ..core.lfunc import LambdaValue, completed_lambda, lambda_star
from ..models import LambdaRecord, RunConfig
from . import emit
from .qexp import add_series_arguments

logger = logging.getLogger(__name__)

PAIRS = {Family.G: g_pair, Family.H: h_pair}


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(
        "lambda",
        parents=parents,
        help="completed L-function of a G/H series or a product of them",
        description="Lambda(f, s) = M^(s/2) (2 pi)^-s Gamma(s) L(f, s) with M = N^2.",
    )
    add_series_arguments(parser)
    parser.add_argument("--s", dest="s", required=True, help="point s, e.g. 4, 0.5+2i")
    parser.add_argument("--star", action="store_true", help="regularized value Lambda*(f, s) at s = 0 or s = k")
    parser.add_argument(
        "--times",
        nargs=5,
        action="append",
        default=[],
        metavar=("FAMILY", "K", "A", "B", "N"),
        help="multiply by another G/H series of the same level (repeatable)",
    )
    parser.set_defaults(handler=run)


def parse_s(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise InvalidSpec(f"cannot parse s = {text!r}; use forms like 4, -1.5 or 0.5+2i")


def _pair(family: str, k, a, b, N, T: int) -> tuple[ModularPair, dict]:
    try:
        family = Family(family)
        k, a, b, N = int(k), int(a), int(b), int(N)
    except ValueError:
        raise InvalidSpec(f"cannot parse series {family} {k} {a} {b} {N}")
    if family not in PAIRS:
        raise InvalidSpec(
            f"Lambda is computed for G and H series (level N^2 with a known Atkin-Lehner image), not {family.value}"
        )
    pair = PAIRS[family](k, a, b, N, T)
    return pair, {"family": family.value, "k": k, "a": a % N, "b": b % N, "N": N}


def evaluate(pair: ModularPair, s: complex, star: bool) -> LambdaValue:
    if not star:
        return completed_lambda(pair.f, pair.wf, pair.level, pair.weight, s)
    if s == 0:
        return lambda_star(pair.f, pair.wf, pair.level, pair.weight, "zero")
    if s == pair.weight:
        return lambda_star(pair.f, pair.wf, pair.level, pair.weight, "k")
    raise InvalidSpec(f"--star needs s = 0 or s = k = {pair.weight}, got {s}")


def run(args: argparse.Namespace, config: RunConfig) -> int:
    s = parse_s(args.s)
    pair, spec = _pair(args.family, args.k, args.a, args.b, args.N, config.truncation)
    specs = [spec]
    for extra in args.times:
        factor, spec = _pair(*extra, config.truncation)
        pair = pair * factor
        specs.append(spec)
    logger.info("lambda of %d series, weight %d, level %d at s=%s", len(specs), pair.weight, pair.level, s)
    result = evaluate(pair, s, args.star)
    record = LambdaRecord(
        schema=1,
        series_spec=specs,
        s=[s.real, s.imag],
        value_re=float(result.value.re),
        value_im=float(result.value.im),
        err=float(result.value.err),
        regularized=result.regularized,
        pole_subtractions=[
            {"at": at, "re": float(mpmath.re(c)), "im": float(mpmath.im(c))} for at, c in result.pole_subtractions
        ],
    )
    emit(record.model_dump_json(by_alias=True) + "\n", args.out)
    return 0
