"""
Exact field arithmetic and dense linear algebra over based vector spaces

Scalars are ``fractions.Fraction`` over Q and plain ``int`` residues in
[0, p) over F_p. Matrices wrap numpy object arrays so the element loops run
inside numpy while every operation stays exact. A matrix of a linear map
f: k^n -> k^m has shape (m, n); column j is f(e_j).
"""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import (
    FieldMismatchError,
    NoSuchRootError,
    ShapeError,
    SingularMatrixError,
)

Scalar = Union[Fraction, int]
SparseVector = Dict[object, Scalar]


def is_prime(n: int) -> bool:
    """Trial division; desk-scale moduli only."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    divisor = 3
    while divisor * divisor <= n:
        if n % divisor == 0:
            return False
        divisor += 2
    return True


def prime_factors(n: int) -> List[int]:
    factors = []
    divisor = 2
    while divisor * divisor <= n:
        if n % divisor == 0:
            factors.append(divisor)
            while n % divisor == 0:
                n //= divisor
        divisor += 1
    if n > 1:
        factors.append(n)
    return factors


class FieldKind(str, Enum):
    """Coefficient field kinds"""
    RATIONALS = "rationals"
    PRIME = "prime"


@dataclass(frozen=True)
class Field:
    """The ground field k: either Q or F_p."""
    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME:
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"F_p requires a prime modulus, got {self.p!r}")
            if self.p >= 2 ** 31:
                raise ValueError("prime moduli are limited to p < 2^31")
        elif self.p is not None:
            raise ValueError("the rationals take no modulus")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(FieldKind.PRIME, p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def name(self) -> str:
        return f"F_{self.p}" if self.is_prime_field else "Q"

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime_field else 0

    @property
    def zero(self) -> Scalar:
        return 0 if self.is_prime_field else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_prime_field else Fraction(1)

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or scalar string into canonical form."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (np.integer,)):
            value = int(value)
        if self.is_prime_field:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        return Fraction(value)

    def reduce(self, value) -> Scalar:
        if self.is_prime_field:
            return value % self.p
        return value if isinstance(value, Fraction) else Fraction(value)

    def reduce_array(self, array: np.ndarray) -> np.ndarray:
        if self.is_prime_field:
            return array % self.p
        return array

    def is_zero(self, value) -> bool:
        return self.reduce(value) == 0

    def inv(self, value: Scalar) -> Scalar:
        if self.is_zero(value):
            raise ZeroDivisionError(f"division by zero in {self.name}")
        if self.is_prime_field:
            return pow(int(value), -1, self.p)
        return 1 / Fraction(value)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a * self.inv(b))

    def power(self, value: Scalar, exponent: int) -> Scalar:
        if exponent < 0:
            return self.power(self.inv(value), -exponent)
        if self.is_prime_field:
            return pow(int(value), exponent, self.p)
        return Fraction(value) ** exponent

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        if self.is_prime_field:
            if "/" in text:
                return self(Fraction(text))
            return int(text) % self.p
        return Fraction(text)

    def format(self, value: Scalar) -> str:
        value = self.reduce(value)
        if self.is_prime_field:
            return str(value)
        return f"{value.numerator}/{value.denominator}"

    def zeros(self, shape) -> np.ndarray:
        return np.full(shape, self.zero, dtype=object)

    def vector(self, values: Iterable) -> np.ndarray:
        items = [self(v) for v in values]
        array = np.empty(len(items), dtype=object)
        array[:] = items
        return array

    def unit_vector(self, size: int, index: int) -> np.ndarray:
        vec = self.zeros(size)
        vec[index] = self.one
        return vec

    def elements(self) -> Iterator[Scalar]:
        if not self.is_prime_field:
            raise ValueError("Q is infinite")
        return iter(range(self.p))

    @cached_property
    def multiplicative_generator(self) -> int:
        """Smallest primitive root mod p."""
        if not self.is_prime_field:
            raise NoSuchRootError("Q has no multiplicative generator")
        if self.p == 2:
            return 1
        order = self.p - 1
        factors = prime_factors(order)
        for candidate in range(2, self.p):
            if all(pow(candidate, order // q, self.p) != 1 for q in factors):
                return candidate
        raise NoSuchRootError(f"no primitive root found mod {self.p}")

    def __str__(self) -> str:
        return self.name


def primitive_root_of_unity(n: int, field: Field) -> Scalar:
    """A primitive n-th root of unity in ``field``.

    Over F_p this is g^((p-1)/n) for the smallest primitive root g.
    """
    if n < 1:
        raise ValueError("root order must be positive")
    if not field.is_prime_field:
        if n == 1:
            return Fraction(1)
        if n == 2:
            return Fraction(-1)
        raise NoSuchRootError(f"Q has no primitive {n}-th root of unity")
    if (field.p - 1) % n != 0:
        raise NoSuchRootError(f"{field.name} has no primitive {n}-th root of unity")
    return pow(field.multiplicative_generator, (field.p - 1) // n, field.p)


def multiplicative_order(value: Scalar, field: Field) -> int:
    """Order of ``value`` in k^x, or 0 when it is not a root of unity."""
    value = field.reduce(value)
    if value == 0:
        return 0
    if not field.is_prime_field:
        return {1: 1, -1: 2}.get(value, 0)
    current = value
    for order in range(1, field.p):
        if current == 1:
            return order
        current = current * value % field.p
    return 0


@dataclass(frozen=True)
class TensorIndex:
    """Row-major bookkeeping for basis tensors of V_1 ⊗ ... ⊗ V_r."""
    factors: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(f) for f in self.factors))
        if any(f < 0 for f in self.factors):
            raise ShapeError(f"negative factor dimension in {self.factors}")

    @property
    def size(self) -> int:
        return int(np.prod(self.factors, dtype=np.int64)) if self.factors else 1

    def flatten(self, index: Sequence[int]) -> int:
        if len(index) != len(self.factors):
            raise ShapeError(f"index {tuple(index)} does not match factors {self.factors}")
        if not self.factors:
            return 0
        return int(np.ravel_multi_index(tuple(int(i) for i in index), self.factors))

    def unflatten(self, flat: int) -> Tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise ShapeError(f"flat index {flat} out of range for {self.factors}")
        if not self.factors:
            return ()
        return tuple(int(i) for i in np.unravel_index(int(flat), self.factors))

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(f) for f in self.factors))


class Matrix:
    """An immutable matrix over a Field."""

    def __init__(self, field: Field, entries):
        array = np.array(entries, dtype=object)
        if array.ndim != 2:
            if array.size == 0:
                array = array.reshape(0, 0)
            else:
                raise ShapeError(f"matrix entries must be two-dimensional, got shape {array.shape}")
        canonical = np.empty(array.shape, dtype=object)
        for position, value in np.ndenumerate(array):
            canonical[position] = field(value)
        canonical.flags.writeable = False
        self.field = field
        self.entries = canonical

    @classmethod
    def _wrap(cls, field: Field, array: np.ndarray) -> "Matrix":
        """Trusted constructor for arrays that are already canonical."""
        matrix = cls.__new__(cls)
        array = np.array(array, dtype=object)
        array.flags.writeable = False
        matrix.field = field
        matrix.entries = array
        return matrix

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        array = field.zeros((n, n))
        for i in range(n):
            array[i, i] = field.one
        return cls._wrap(field, array)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[np.ndarray], rows: Optional[int] = None) -> "Matrix":
        if not columns:
            return cls.zeros(field, rows or 0, 0)
        return cls._wrap(field, field.reduce_array(np.stack([np.asarray(c, dtype=object) for c in columns], axis=1)))

    @classmethod
    def from_sparse_columns(cls, field: Field, rows: int, columns: Sequence[SparseVector]) -> "Matrix":
        array = field.zeros((rows, len(columns)))
        for j, column in enumerate(columns):
            for i, value in column.items():
                array[i, j] = field.reduce(value)
        return cls._wrap(field, array)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def _check_field(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.name} vs {other.field.name}")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.cols != other.rows:
                raise ShapeError(f"cannot compose {self.shape} with {other.shape}")
            if self.cols == 0:
                return Matrix.zeros(self.field, self.rows, other.cols)
            return Matrix._wrap(self.field, self.field.reduce_array(self.entries.dot(other.entries)))
        vector = np.asarray(other, dtype=object)
        if vector.shape != (self.cols,):
            raise ShapeError(f"cannot apply {self.shape} matrix to vector of shape {vector.shape}")
        if self.cols == 0:
            return self.field.zeros(self.rows)
        return self.field.reduce_array(self.entries.dot(vector))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(self.field, self.field.reduce_array(self.entries + other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._wrap(self.field, self.field.reduce_array(self.entries - other.entries))

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.field, self.field.reduce_array(-self.entries))

    def scale(self, factor: Scalar) -> "Matrix":
        return Matrix._wrap(self.field, self.field.reduce_array(self.entries * self.field(factor)))

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, self.entries.T.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.entries != 0)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.field, self.rows)

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j].copy()

    def row(self, i: int) -> np.ndarray:
        return self.entries[i, :].copy()

    @cached_property
    def sparse_columns(self) -> List[Dict[int, Scalar]]:
        return [
            {int(i): self.entries[i, j] for i in np.flatnonzero(self.entries[:, j] != 0)}
            for j in range(self.cols)
        ]

    def apply_sparse(self, vector: SparseVector) -> Dict[int, Scalar]:
        """Image of a sparse vector {basis index: coefficient}."""
        result: Dict[int, Scalar] = {}
        columns = self.sparse_columns
        for j, coeff in vector.items():
            for i, value in columns[j].items():
                accumulate(self.field, result, i, coeff * value)
        return result

    def rref(self) -> Tuple["Matrix", List[int]]:
        reduced, pivots = _rref(self.field, self.entries)
        return Matrix._wrap(self.field, reduced), pivots

    def rank(self) -> int:
        return len(_rref(self.field, self.entries)[1])

    def kernel_basis(self) -> List[np.ndarray]:
        return kernel_basis(self)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise SingularMatrixError(f"non-square matrix {self.shape} has no inverse")
        n = self.rows
        augmented = np.concatenate([self.entries, Matrix.identity(self.field, n).entries], axis=1)
        reduced, pivots = _rref(self.field, augmented)
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError(f"matrix of shape {self.shape} is singular (rank {len([p for p in pivots if p < n])})")
        return Matrix._wrap(self.field, reduced[:, n:].copy())

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def kron(self, other: "Matrix") -> "Matrix":
        return tensor_of_maps(self, other)

    def to_strings(self) -> List[List[str]]:
        return [[self.field.format(v) for v in row] for row in self.entries]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(v) for v in row) for row in self.entries)
        return f"Matrix[{self.field.name}]({self.rows}x{self.cols}: {body})"


def _rref(field: Field, entries: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Gauss-Jordan elimination with leftmost pivots and first nonzero pivot row."""
    reduced = np.array(entries, dtype=object)
    rows, cols = reduced.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(reduced[r:, c] != 0)
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            reduced[[r, p]] = reduced[[p, r]]
        reduced[r] = field.reduce_array(reduced[r] * field.inv(reduced[r, c]))
        for i in np.flatnonzero(reduced[:, c] != 0):
            if i != r:
                reduced[i] = field.reduce_array(reduced[i] - reduced[i, c] * reduced[r])
        pivots.append(c)
        r += 1
    return reduced, pivots


def rank(matrix: Matrix) -> int:
    return matrix.rank()


def kernel_basis(matrix: Matrix) -> List[np.ndarray]:
    """Basis of the null space, in reduced echelon form.

    The basis is canonical: each vector has leading coordinate 1 and the
    other basis vectors vanish at that coordinate.
    """
    field = matrix.field
    reduced, pivots = _rref(field, matrix.entries)
    pivot_set = set(pivots)
    vectors = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vector = field.zeros(matrix.cols)
        vector[free] = field.one
        for row, pivot in enumerate(pivots):
            vector[pivot] = field.reduce(-reduced[row, free])
        vectors.append(vector)
    if not vectors:
        return []
    basis, _ = _rref(field, np.stack(vectors))
    return [basis[i].copy() for i in range(len(vectors))]


def span_basis(field: Field, vectors: Sequence[np.ndarray], size: int) -> Matrix:
    """Canonical basis of a span as the nonzero rows of its reduced echelon form."""
    if not vectors:
        return Matrix.zeros(field, 0, size)
    reduced, pivots = _rref(field, np.stack([np.asarray(v, dtype=object) for v in vectors]))
    return Matrix._wrap(field, reduced[: len(pivots)].copy())


def tensor_of_maps(f: Matrix, g: Matrix) -> Matrix:
    """f⊗g on the row-major flattened tensor space."""
    if f.field != g.field:
        raise FieldMismatchError(f"{f.field.name} vs {g.field.name}")
    if 0 in f.shape or 0 in g.shape:
        return Matrix.zeros(f.field, f.rows * g.rows, f.cols * g.cols)
    return Matrix._wrap(f.field, f.field.reduce_array(np.kron(f.entries, g.entries)))


def tensor_power_of_map(f: Matrix, d: int) -> Matrix:
    result = Matrix.identity(f.field, 1)
    for _ in range(d):
        result = tensor_of_maps(result, f)
    return result


def permutation_matrix(field: Field, images: Sequence[int]) -> Matrix:
    """Matrix sending e_j to e_{images[j]}."""
    n = len(images)
    array = field.zeros((n, n))
    for j, i in enumerate(images):
        array[i, j] = field.one
    return Matrix._wrap(field, array)


def accumulate(field: Field, acc: dict, key, value) -> None:
    """acc[key] += value, dropping entries that cancel."""
    total = field.reduce(acc.get(key, 0) + value)
    if total == 0:
        acc.pop(key, None)
    else:
        acc[key] = total


def add_scaled(field: Field, acc: dict, vector: dict, coeff: Scalar = 1) -> dict:
    for key, value in vector.items():
        accumulate(field, acc, key, coeff * value)
    return acc


def sparse_sub(field: Field, left: dict, right: dict) -> dict:
    diff = dict(left)
    for key, value in right.items():
        accumulate(field, diff, key, -value)
    return diff


def to_sparse(vector: np.ndarray) -> Dict[int, Scalar]:
    return {int(i): vector[i] for i in np.flatnonzero(np.asarray(vector, dtype=object) != 0)}


def to_dense(field: Field, vector: Dict[int, Scalar], size: int) -> np.ndarray:
    dense = field.zeros(size)
    for i, value in vector.items():
        dense[i] = value
    return dense


def solve_linear_system(field: Field, rows: Sequence[Dict[int, Scalar]], rhs: Sequence[Scalar],
                        unknowns: int) -> Optional[List[Scalar]]:
    """Solve a sparse system; free unknowns are set to zero.

    Returns None when the system is inconsistent. Each row is a dict
    {unknown index: coefficient}.
    """
    pivots: Dict[int, Tuple[Dict[int, Scalar], Scalar]] = {}
    for row, value in zip(rows, rhs):
        current = {k: field.reduce(v) for k, v in row.items() if not field.is_zero(v)}
        target = field.reduce(value)
        while True:
            hits = [c for c in current if c in pivots]
            if not hits:
                break
            column = min(hits)
            coeff = current[column]
            pivot_row, pivot_value = pivots[column]
            for k, v in pivot_row.items():
                accumulate(field, current, k, -coeff * v)
            target = field.reduce(target - coeff * pivot_value)
        if not current:
            if target != 0:
                return None
            continue
        column = min(current)
        scale = field.inv(current[column])
        pivots[column] = (
            {k: field.reduce(v * scale) for k, v in current.items()},
            field.reduce(target * scale),
        )
    solution = [field.zero] * unknowns
    for column in sorted(pivots, reverse=True):
        pivot_row, value = pivots[column]
        total = value
        for k, v in pivot_row.items():
            if k != column:
                total -= v * solution[k]
        solution[column] = field.reduce(total)
    return solution
