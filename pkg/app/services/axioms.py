"""
Collects axiom failures into AxiomReport models
"""

from typing import Callable, Dict, Iterable, List, Optional, Sequence

from app.models.report import AxiomFailure, AxiomReport
from app.services.exactla import Field, Scalar, sparse_sub


def render_key(labels: Sequence[str]) -> Callable[[object], str]:
    """Renderer for sparse-vector keys over one based space (ints or tuples of ints)."""
    def render(key) -> str:
        if isinstance(key, tuple):
            return "⊗".join(labels[k] for k in key) if key else "1"
        return labels[key]
    return render


def render_mixed(*spaces: Sequence[str]) -> Callable[[object], str]:
    """Renderer for tuple keys whose components live in different based spaces."""
    def render(key) -> str:
        return "⊗".join(space[k] for space, k in zip(spaces, key))
    return render


class AxiomCollector:
    """Accumulates exhaustive comparisons of the two sides of axioms"""

    def __init__(self, subject: str, field: Field):
        self.subject = subject
        self.field = field
        self.checked: List[str] = []
        self.failures: List[AxiomFailure] = []

    def check(self, axiom: str) -> None:
        if axiom not in self.checked:
            self.checked.append(axiom)

    def compare(self, axiom: str, indices: Iterable[int], lhs: Dict, rhs: Dict,
                labels: Optional[Sequence[str]] = None,
                render: Optional[Callable[[object], str]] = None) -> bool:
        """Record a failure when two sparse vectors differ; returns True on agreement."""
        self.check(axiom)
        diff = sparse_sub(self.field, lhs, rhs)
        if not diff:
            return True
        render = render or str
        discrepancy = {render(key): self.field.format(value) for key, value in sorted(diff.items())}
        self.fail(axiom, indices, labels, discrepancy)
        return False

    def compare_scalars(self, axiom: str, indices: Iterable[int], lhs: Scalar, rhs: Scalar,
                        labels: Optional[Sequence[str]] = None) -> bool:
        self.check(axiom)
        diff = self.field.reduce(lhs - rhs)
        if diff == 0:
            return True
        self.fail(axiom, indices, labels, {"value": self.field.format(diff)})
        return False

    def fail(self, axiom: str, indices: Iterable[int], labels: Optional[Sequence[str]] = None,
             discrepancy: Optional[Dict[str, str]] = None) -> None:
        self.check(axiom)
        self.failures.append(AxiomFailure(
            axiom=axiom,
            indices=[int(i) for i in indices],
            labels=list(labels or []),
            discrepancy=discrepancy or {},
        ))

    def merge(self, report: AxiomReport, prefix: Optional[str] = None) -> None:
        for axiom in report.checked:
            self.check(f"{prefix}:{axiom}" if prefix else axiom)
        for failure in report.failures:
            name = f"{prefix}:{failure.axiom}" if prefix else failure.axiom
            self.failures.append(failure.model_copy(update={"axiom": name}))

    def report(self) -> AxiomReport:
        return AxiomReport(subject=self.subject, checked=list(self.checked), failures=list(self.failures))
