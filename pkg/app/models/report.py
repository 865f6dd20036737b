"""
Data models for verification reports
"""

from enum import Enum
from typing import Dict, List, Optional, Any

from pydantic import BaseModel, Field


class SuiteStatus(str, Enum):
    """Verification suite status enumeration"""
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class AxiomFailure(BaseModel):
    """One failing instance of an axiom on basis elements"""
    axiom: str
    indices: List[int]
    labels: List[str] = Field(default_factory=list)
    discrepancy: Dict[str, str] = Field(default_factory=dict)


class AxiomReport(BaseModel):
    """Exhaustive result of checking a family of axioms"""
    subject: str
    checked: List[str] = Field(default_factory=list)
    failures: List[AxiomFailure] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed_axioms(self) -> List[str]:
        seen: List[str] = []
        for failure in self.failures:
            if failure.axiom not in seen:
                seen.append(failure.axiom)
        return seen

    def merge(self, other: "AxiomReport", prefix: Optional[str] = None) -> "AxiomReport":
        """Append another report's axioms and failures, optionally namespaced"""
        for axiom in other.checked:
            name = f"{prefix}:{axiom}" if prefix else axiom
            if name not in self.checked:
                self.checked.append(name)
        for failure in other.failures:
            if prefix:
                failure = failure.model_copy(update={"axiom": f"{prefix}:{failure.axiom}"})
            self.failures.append(failure)
        return self

    def raise_if_failed(self, error_cls=None, message: Optional[str] = None) -> "AxiomReport":
        if self.failures:
            from app.core.exceptions import VerificationError

            cls = error_cls or VerificationError
            text = message or f"{self.subject}: failed {', '.join(self.failed_axioms())}"
            raise cls(text, report=self)
        return self


class SuiteResult(BaseModel):
    """Outcome of one verification suite within a run"""
    name: str
    pipeline: str
    status: SuiteStatus
    message: str = ""
    report: Optional[AxiomReport] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class RunReport(BaseModel):
    """Everything a scenario run produced"""
    scenario: str
    field: str
    status: SuiteStatus
    exit_code: int
    pipelines: List[str] = Field(default_factory=list)
    suites: List[SuiteResult] = Field(default_factory=list)
    hilbert: Dict[str, List[int]] = Field(default_factory=dict)
    dimensions: Dict[str, int] = Field(default_factory=dict)
    relations: Dict[str, List[str]] = Field(default_factory=dict)
    objects: List[str] = Field(default_factory=list)
