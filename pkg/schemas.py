from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Dict, List, Literal, Optional
import math

from config import SCHEMA_VERSION

# --- Model Descriptors ---
class AlgebraDescriptor(BaseModel):
    """One summand of a direct sum (or a plain algebra)."""
    model_config = ConfigDict(extra="forbid")

    kind: str
    size: Optional[int] = None
    components: Optional[List["AlgebraDescriptor"]] = None

class ModelDescriptor(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int = SCHEMA_VERSION
    backend: Literal["classical", "jordan", "polytopic"]
    name: Optional[str] = None
    # jordan: kind + size, or kind = "direct_sum" + components
    kind: Optional[str] = None
    size: Optional[int] = None
    components: Optional[List[AlgebraDescriptor]] = None
    # classical / polytopic
    outcomes: Optional[List[str]] = None
    tests: Optional[List[List[str]]] = None
    vertices: Optional[List[List[float]]] = None

    @field_validator("schema_version")
    @classmethod
    def supported_version(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value} (expected {SCHEMA_VERSION})")
        return value

    @model_validator(mode="after")
    def backend_parameters(self) -> "ModelDescriptor":
        if self.backend == "jordan" and not self.kind:
            raise ValueError("jordan descriptors need 'kind'")
        if self.backend in ("classical", "polytopic") and not self.outcomes:
            raise ValueError(f"{self.backend} descriptors need 'outcomes'")
        if self.backend == "polytopic" and (not self.tests or not self.vertices):
            raise ValueError("polytopic descriptors need 'tests' and 'vertices'")
        return self

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)

# --- Report Models ---
class CheckRecord(BaseModel):
    name: str
    claim: str
    anchor: str  # where in the theory the claim comes from, e.g. "Self-dualizing inner product from a conjugate"
    samples: int = 0
    worst_residual: float = 0.0
    tolerance: float
    passed: bool
    details: Dict[str, float] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @field_validator("worst_residual", "tolerance")
    @classmethod
    def finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("report values must be finite")
        return value

    @field_validator("details")
    @classmethod
    def finite_details(cls, values: Dict[str, float]) -> Dict[str, float]:
        for key, value in values.items():
            if not math.isfinite(value):
                raise ValueError(f"detail {key!r} is not finite")
        return values

class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    suite: str
    seed: int
    tolerance: float
    passed: bool
    checks: List[CheckRecord]

    @model_validator(mode="after")
    def verdict_matches_checks(self) -> "Report":
        if self.passed != all(check.passed for check in self.checks):
            raise ValueError("overall verdict must be the conjunction of the checks")
        return self

def make_report(suite: str, seed: int, tolerance: float, checks: List[CheckRecord]) -> Report:
    ordered = sorted(checks, key=lambda check: check.name)
    return Report(
        suite=suite,
        seed=seed,
        tolerance=tolerance,
        passed=all(check.passed for check in ordered),
        checks=ordered,
    )
