"""Run configuration: command-line flags over environment over defaults."""
import logging
import os
from typing import Any, Mapping, Optional

from pydantic import ValidationError

from .core.errors import InvalidSpec
from .models import RunConfig

logger = logging.getLogger(__name__)

# RunConfig field -> environment variable
ENVIRONMENT = {
    "tolerance": "MODREG_TOL",
    "truncation": "MODREG_TERMS",
    "precision": "MODREG_PREC",
    "seed": "MODREG_SEED",
    "output": "MODREG_FORMAT",
    "log_level": "MODREG_LOG_LEVEL",
}


def resolve_config(overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Build the RunConfig; ``overrides`` holds the flags that were given (None means not given)."""
    values: dict[str, Any] = {}
    for name, variable in ENVIRONMENT.items():
        raw = os.getenv(variable)
        if raw is not None and raw.strip():
            values[name] = raw.strip()
    for name, value in (overrides or {}).items():
        if value is not None:
            values[name] = value
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        errors = [f"{'.'.join(str(p) for p in error['loc'])}: {error['msg']}" for error in e.errors()]
        raise InvalidSpec("invalid configuration: " + "; ".join(errors), context={"values": {k: str(v) for k, v in values.items()}})
    logger.debug("resolved configuration %s", config.model_dump())
    return config
