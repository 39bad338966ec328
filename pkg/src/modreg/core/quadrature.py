"""Tanh-sinh quadrature on half-lines and windows, with tail envelopes."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath

from .errors import QuadratureFailure
from .zeta_special import ComplexValue

logger = logging.getLogger(__name__)

Integrand = Callable[[float], complex]


@dataclass(frozen=True)
class Envelope:
    """``|integrand(y)| <= scale * y^power * e^(-rate * y)`` for y beyond the start point."""

    scale: float
    power: float
    rate: float

    def __call__(self, y: float) -> float:
        return self.scale * y**self.power * math.exp(-self.rate * y)

    def tail(self, y: float) -> float:
        """``int_y^oo`` of the envelope."""
        if self.scale == 0.0:
            return 0.0
        if self.rate <= 0.0:
            return math.inf
        with mpmath.workprec(53):
            value = mpmath.gammainc(self.power + 1, self.rate * y) * mpmath.power(self.rate, -(self.power + 1))
        return float(self.scale * value)


def _quad(integrand: Integrand, nodes: Sequence[float]) -> tuple[mpmath.mpc, mpmath.mpf]:
    with mpmath.workprec(53):
        value, err = mpmath.quad(lambda y: integrand(float(y)), list(nodes), error=True)
    if not (mpmath.isfinite(mpmath.re(value)) and mpmath.isfinite(mpmath.im(value))):
        raise QuadratureFailure("quadrature produced a non-finite value", context={"nodes": list(nodes)[:4]})
    return mpmath.mpc(value), mpmath.mpf(err)


def integrate_window(integrand: Integrand, start: float, end: float, panels: int = 8) -> ComplexValue:
    """``int_start^end integrand(y) dy`` over equal panels."""
    nodes = [start + (end - start) * j / panels for j in range(panels + 1)]
    value, err = _quad(integrand, nodes)
    return ComplexValue(value, err + 1e-15 * abs(value))


def integrate_log_window(integrand: Integrand, start: float, end: float, panels_per_decade: int = 2) -> ComplexValue:
    """``int_start^end integrand(y) dy`` after the substitution ``y = e^x``."""
    lo, hi = math.log(start), math.log(end)
    panels = max(2, math.ceil((hi - lo) / math.log(10) * panels_per_decade))
    nodes = [lo + (hi - lo) * j / panels for j in range(panels + 1)]

    def substituted(x: float) -> complex:
        y = math.exp(x)
        return integrand(y) * y

    value, err = _quad(substituted, nodes)
    return ComplexValue(value, err + 1e-15 * abs(value))


def integrate_decaying(
    integrand: Integrand,
    start: float,
    envelope: Envelope,
    eps: float,
) -> ComplexValue:
    """``int_start^oo integrand(y) dy`` for an integrand dominated by ``envelope``.

    The upper end grows until the envelope tail is below ``eps/4``; the
    remaining interval is split into panels of width about ``1/rate``.
    """
    if envelope.scale == 0.0:
        return ComplexValue(0, 0)
    width = 1.0 / envelope.rate
    end = start + 4 * width
    while envelope.tail(end) > eps / 4:
        end += 4 * width
        if end - start > 1e4 * width:
            raise QuadratureFailure(
                "integrand envelope does not close",
                context={"start": start, "rate": envelope.rate},
            )
    panels = max(4, math.ceil((end - start) / width))
    nodes = [start + (end - start) * j / panels for j in range(panels + 1)]
    value, err = _quad(integrand, nodes)
    tail = envelope.tail(end)
    logger.debug("integrate_decaying: window [%g, %g], %d panels, tail %.3g", start, end, panels, tail)
    if err > eps / 2:
        logger.warning("quadrature error estimate %.3g exceeds half the budget %.3g", float(err), eps)
    return ComplexValue(value, err + tail + 1e-15 * abs(value))
