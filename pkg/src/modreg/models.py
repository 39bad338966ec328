"""Pydantic models for modreg reports and configuration."""
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from .core.suites import SuiteCheck
from .core.zeta_special import ComplexValue

SCHEMA_VERSION = 1


class RunConfig(BaseModel):
    """Resolved run configuration (flags > environment > defaults)."""
    tolerance: Optional[float] = Field(None, gt=0, description="Tolerance of numeric checks; suites use their own when unset")
    truncation: int = Field(200, gt=0, description="Truncation order T in exponent units")
    precision: int = Field(106, ge=53, description="Working precision in bits")
    seed: int = Field(0, description="Seed of randomized sweeps")
    output: Literal["json", "csv", "text"] = "json"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    @field_validator("output", mode="before")
    @classmethod
    def _lower(cls, value):
        return value.lower() if isinstance(value, str) else value

    @field_validator("log_level", mode="before")
    @classmethod
    def _upper(cls, value):
        return value.upper() if isinstance(value, str) else value


class Value(BaseModel):
    """A complex value with its certified absolute error bound."""
    re: float
    im: float
    err: float

    @classmethod
    def of(cls, value: ComplexValue) -> "Value":
        return cls(**value.to_json())


class CheckResult(BaseModel):
    """One instance of an identity check."""
    id: str
    identity: str
    params: dict[str, Any] = Field(default_factory=dict)
    lhs: Value
    rhs: Value
    residual: float
    tolerance: float
    passed: bool
    reference: str

    @classmethod
    def from_check(cls, check: SuiteCheck) -> "CheckResult":
        return cls(
            id=check.id,
            identity=check.identity,
            params=check.params,
            lhs=Value.of(check.lhs),
            rhs=Value.of(check.rhs),
            residual=check.residual,
            tolerance=check.tolerance,
            passed=check.passed,
            reference=check.reference,
        )


class VerificationReport(BaseModel):
    """Full report of a ``verify`` run."""
    schema_: int = Field(SCHEMA_VERSION, alias="schema")
    suite: str
    config: RunConfig
    checks: List[CheckResult]
    passed: bool
    worst: Optional[CheckResult] = None

    model_config = {"populate_by_name": True}


class LambdaRecord(BaseModel):
    """Result of a ``lambda`` run."""
    schema_: int = Field(SCHEMA_VERSION, alias="schema")
    series_spec: List[dict[str, Any]]
    s: List[float] = Field(..., description="Real and imaginary part of s")
    value_re: float
    value_im: float
    err: float
    regularized: bool
    pole_subtractions: List[dict[str, Any]] = Field(default_factory=list)

    model_config = {"populate_by_name": True}


class ErrorRecord(BaseModel):
    """What the command line prints when a run stops on an engine error."""
    schema_: int = Field(SCHEMA_VERSION, alias="schema")
    error: str
    detail: str
    context: dict[str, Any] = Field(default_factory=dict)

    model_config = {"populate_by_name": True}
