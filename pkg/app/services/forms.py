"""
Bilinear forms between based spaces
"""

from dataclasses import dataclass, field as dataclass_field, replace
from typing import Dict, FrozenSet, Iterable, List, Sequence

import numpy as np

from app.core.exceptions import FieldMismatchError, ShapeError
from app.services.exactla import Field, Matrix, Scalar, kernel_basis


@dataclass(frozen=True, eq=False)
class Form:
    """β: X⊗Y -> k with matrix[i, j] = β(x_i, y_j).

    ``left`` and ``right`` are the based carriers (anything with ``labels``).
    The curried maps are β_ℓ = matrixᵀ: X -> Y* and β_r = matrix: Y -> X*.
    """
    left: object
    right: object
    matrix: Matrix
    name: str = "form"
    verified: FrozenSet[str] = dataclass_field(default_factory=frozenset)

    def __post_init__(self):
        if self.matrix.shape != (len(self.left.labels), len(self.right.labels)):
            raise ShapeError(f"form matrix {self.matrix.shape} does not fit "
                             f"{len(self.left.labels)}x{len(self.right.labels)}")
        if self.left.field != self.right.field or self.matrix.field != self.left.field:
            raise FieldMismatchError("form over mismatched fields")

    @property
    def field(self) -> Field:
        return self.matrix.field

    @property
    def left_curried(self) -> Matrix:
        return self.matrix.T

    @property
    def right_curried(self) -> Matrix:
        return self.matrix

    def value(self, x: Dict[int, Scalar], y: Dict[int, Scalar]) -> Scalar:
        f = self.field
        entries = self.matrix.entries
        total = f.zero
        for i, a in x.items():
            for j, b in y.items():
                total += a * b * entries[i, j]
        return f.reduce(total)

    def at(self, i: int, j: int) -> Scalar:
        return self.matrix.entries[i, j]

    def left_perp(self) -> List[np.ndarray]:
        """Y^⊥ = Ker β_ℓ inside the left space."""
        return kernel_basis(self.left_curried)

    def right_perp(self) -> List[np.ndarray]:
        """X^⊥ = Ker β_r inside the right space."""
        return kernel_basis(self.right_curried)

    def rank(self) -> int:
        return self.matrix.rank()

    def is_nondegenerate(self) -> bool:
        return self.matrix.rows == self.matrix.cols and self.rank() == self.matrix.rows

    def mark_verified(self, *tags: str) -> "Form":
        return replace(self, verified=self.verified | frozenset(tags))


def form_from_function(left, right, value, name: str = "form") -> Form:
    """Assemble a form from value(i, j) on basis indices."""
    f = left.field
    entries = f.zeros((len(left.labels), len(right.labels)))
    for i in range(len(left.labels)):
        for j in range(len(right.labels)):
            entries[i, j] = f.reduce(value(i, j))
    return Form(left, right, Matrix._wrap(f, entries), name)


def counit_form(left, right, name: str = "trivial") -> Form:
    """ε⊗ε."""
    return form_from_function(left, right, lambda i, j: left.counit[i] * right.counit[j], name)


def restrict_rows(matrix: Matrix, rows: Sequence[int]) -> Matrix:
    return Matrix._wrap(matrix.field, matrix.entries[list(rows), :].copy())


def restrict_columns(matrix: Matrix, columns: Sequence[int]) -> Matrix:
    return Matrix._wrap(matrix.field, matrix.entries[:, list(columns)].copy())


def standard_span(field: Field, size: int, indices: Iterable[int]) -> List[np.ndarray]:
    return [field.unit_vector(size, i) for i in sorted(indices)]
