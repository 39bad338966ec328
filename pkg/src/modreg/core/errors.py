"""Exceptions raised by the modreg engine.

Every exception carries the process exit code the command line maps it to,
together with a human readable ``detail``.
"""
from typing import Any, Optional


class ModregError(Exception):
    """Base class of all engine errors."""

    exit_code: int = 1

    def __init__(self, detail: str, *, context: Optional[dict[str, Any]] = None):
        super().__init__(detail)
        self.detail = detail
        self.context = context or {}

    def to_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "detail": self.detail, "context": self.context}


class InvalidSpec(ModregError):
    """An input violates a hypothesis (k=2 exclusions, theorem hypotheses, bad config)."""

    exit_code = 2


class PoleError(ModregError):
    exit_code = 3


class PoleAtOne(PoleError):
    pass


class PoleAt0(PoleError):
    pass


class PoleAtK(PoleError):
    pass


class ConvergenceError(ModregError):
    exit_code = 4


class PrecisionLoss(ConvergenceError):
    pass


class DivergentTail(ConvergenceError):
    pass


class NonConvergent(ConvergenceError):
    pass


class OutsideConvergence(ConvergenceError):
    pass


class OutsideStrip(ConvergenceError):
    pass


class TailNotClosed(ConvergenceError):
    pass


class QuadratureFailure(ConvergenceError):
    pass


class ConvergenceViolation(ConvergenceError):
    pass
