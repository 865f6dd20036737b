"""
Finite-dimensional bialgebras and Hopf algebras given by structure constants
"""

import itertools
from dataclasses import dataclass, fields as dataclass_fields, replace
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import FieldMismatchError, NoAntipodeError, ShapeError, SingularMatrixError
from app.core.logging import get_logger
from app.models.report import AxiomReport
from app.services.axioms import AxiomCollector, render_key
from app.services.exactla import (
    Field,
    Matrix,
    Scalar,
    TensorIndex,
    accumulate,
    solve_linear_system,
    tensor_of_maps,
)

logger = get_logger(__name__)

Triple = Tuple[int, int, Scalar]


class StructureTables:
    """Sparse views over the structure tensors of a (co)algebra.

    Subclasses provide ``field``, ``labels``, ``mult`` (d, d, d), ``unit``,
    ``comult`` (triples per basis element) and ``counit``; either half may be
    None for an algebra-only or coalgebra-only structure.
    """

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def has_algebra(self) -> bool:
        return self.mult is not None

    @property
    def has_coalgebra(self) -> bool:
        return self.comult is not None

    @cached_property
    def product_table(self) -> List[List[Dict[int, Scalar]]]:
        d = self.dim
        return [
            [{int(k): self.mult[i, j, k] for k in np.flatnonzero(self.mult[i, j] != 0)} for j in range(d)]
            for i in range(d)
        ]

    @cached_property
    def unit_sparse(self) -> Dict[int, Scalar]:
        return {int(k): self.unit[k] for k in np.flatnonzero(self.unit != 0)}

    @cached_property
    def coproduct_table(self) -> List[Dict[Tuple[int, int], Scalar]]:
        table = []
        for terms in self.comult:
            entry: Dict[Tuple[int, int], Scalar] = {}
            for j, k, c in terms:
                accumulate(self.field, entry, (j, k), c)
            table.append(entry)
        return table

    @cached_property
    def comult_tensor(self) -> np.ndarray:
        tensor = self.field.zeros((self.dim,) * 3)
        for i, terms in enumerate(self.coproduct_table):
            for (j, k), c in terms.items():
                tensor[i, j, k] = c
        return tensor

    @cached_property
    def double_coproduct_table(self) -> List[Dict[Tuple[int, int, int], Scalar]]:
        """(Δ⊗id)Δ(e_i) for every basis element."""
        table = []
        for terms in self.coproduct_table:
            entry: Dict[Tuple[int, int, int], Scalar] = {}
            for (j, k), c in terms.items():
                for (a, b), c2 in self.coproduct_table[j].items():
                    accumulate(self.field, entry, (a, b, k), c * c2)
            table.append(entry)
        return table

    def basis_vector(self, i: int) -> Dict[int, Scalar]:
        return {i: self.field.one}

    def multiply(self, x: Dict[int, Scalar], y: Dict[int, Scalar]) -> Dict[int, Scalar]:
        result: Dict[int, Scalar] = {}
        table = self.product_table
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    accumulate(self.field, result, k, ab * c)
        return result

    def coproduct(self, x: Dict[int, Scalar]) -> Dict[Tuple[int, int], Scalar]:
        result: Dict[Tuple[int, int], Scalar] = {}
        for i, a in x.items():
            for key, c in self.coproduct_table[i].items():
                accumulate(self.field, result, key, a * c)
        return result

    def counit_of(self, x: Dict[int, Scalar]) -> Scalar:
        return self.field.reduce(sum((a * self.counit[i] for i, a in x.items()), self.field.zero))

    def multiply_pairs(self, x: Dict[Tuple[int, int], Scalar],
                       y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
        """Product in the ordinary tensor algebra A⊗A."""
        result: Dict[Tuple[int, int], Scalar] = {}
        table = self.product_table
        for (a, b), c1 in x.items():
            for (p, q), c2 in y.items():
                left, right = table[a][p], table[b][q]
                if not left or not right:
                    continue
                coeff = c1 * c2
                for s, v in left.items():
                    for t, w in right.items():
                        accumulate(self.field, result, (s, t), coeff * v * w)
        return result

    def render(self, key) -> str:
        return render_key(self.labels)(key)

    def format_element(self, x: Dict, render: Optional[Callable[[object], str]] = None) -> str:
        return format_element(self.field, x, render or self.render)


def format_element(field: Field, x: Dict, render: Callable[[object], str]) -> str:
    """Human readable linear combination such as ``-x#g + 2/1·1#1``."""
    if not x:
        return "0"
    parts = []
    for key, value in sorted(x.items()):
        value = field.reduce(value)
        label = render(key)
        if value == 1:
            parts.append(label)
        elif not field.is_prime_field and value == -1:
            parts.append(f"-{label}")
        else:
            text = field.format(value)
            if not field.is_prime_field and value.denominator == 1:
                text = str(value.numerator)
            parts.append(f"{text}·{label}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True, eq=False)
class FiniteBialgebra(StructureTables):
    """Based bialgebra: mult[i, j, k] is the coefficient of e_k in e_i e_j."""
    field: Field
    labels: Tuple[str, ...]
    mult: np.ndarray
    unit: np.ndarray
    comult: Tuple[Tuple[Triple, ...], ...]
    counit: np.ndarray

    def __post_init__(self):
        d = len(self.labels)
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.mult.shape != (d, d, d) or self.unit.shape != (d,) or self.counit.shape != (d,):
            raise ShapeError(f"structure tensors do not match dimension {d}")
        if len(self.comult) != d:
            raise ShapeError(f"comultiplication lists {len(self.comult)} elements, expected {d}")
        for terms in self.comult:
            for j, k, _ in terms:
                if not (0 <= j < d and 0 <= k < d):
                    raise ShapeError(f"comultiplication index ({j}, {k}) out of range")
        for array in (self.mult, self.unit, self.counit):
            array.flags.writeable = False

    @property
    def bialgebra(self) -> "FiniteBialgebra":
        return FiniteBialgebra(self.field, self.labels, self.mult, self.unit, self.comult, self.counit)

    def same_structure(self, other: "FiniteBialgebra") -> bool:
        """Equality of structure constants (labels ignored)."""
        if self.field != other.field or self.dim != other.dim:
            return False
        f = self.field
        return (
            not np.any(f.reduce_array(self.mult - other.mult) != 0)
            and not np.any(f.reduce_array(self.unit - other.unit) != 0)
            and not np.any(f.reduce_array(self.counit - other.counit) != 0)
            and not np.any(f.reduce_array(self.comult_tensor - other.comult_tensor) != 0)
        )


@dataclass(frozen=True, eq=False)
class FiniteHopf(FiniteBialgebra):
    """A FiniteBialgebra together with its antipode."""
    antipode: Optional[Matrix] = None
    antipode_inverse: Optional[Matrix] = None

    def __post_init__(self):
        super().__post_init__()
        if self.antipode is None:
            raise NoAntipodeError("FiniteHopf requires an antipode")

    @property
    def has_bijective_antipode(self) -> bool:
        return self.antipode_inverse is not None

    def require_bijective_antipode(self) -> Matrix:
        if self.antipode_inverse is None:
            raise SingularMatrixError("the antipode is not bijective")
        return self.antipode_inverse


@dataclass(frozen=True, eq=False)
class GroupAlgebra(FiniteHopf):
    """k[Z/n_1 × ... × Z/n_k] with group-element bookkeeping."""
    orders: Tuple[int, ...] = ()
    generator_names: Tuple[str, ...] = ()

    @property
    def index(self) -> TensorIndex:
        return TensorIndex(self.orders)

    def element(self, i: int) -> Tuple[int, ...]:
        return self.index.unflatten(i)

    def element_index(self, element: Sequence[int]) -> int:
        return self.index.flatten([a % n for a, n in zip(element, self.orders)])

    def generator_index(self, position: int) -> int:
        element = [0] * len(self.orders)
        element[position] = 1
        return self.element_index(element)

    def inverse_index(self, i: int) -> int:
        return self.element_index([-a for a in self.element(i)])

    def character_value(self, values: Sequence[Scalar], i: int) -> Scalar:
        """χ(element i) for the character with χ(generator_r) = values[r]."""
        result = self.field.one
        for value, exponent in zip(values, self.element(i)):
            result = self.field.reduce(result * self.field.power(value, exponent))
        return result


@dataclass(frozen=True)
class BialgebraMap:
    """A linear map between bialgebras; matrix has shape (target.dim, source.dim)."""
    source: FiniteBialgebra
    target: FiniteBialgebra
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeError(f"map matrix {self.matrix.shape} does not fit {self.source.dim} -> {self.target.dim}")
        if self.source.field != self.target.field or self.matrix.field != self.source.field:
            raise FieldMismatchError("bialgebra map over mismatched fields")


def build_bialgebra(field: Field, labels: Sequence[str],
                    product: Callable[[int, int], Dict[int, Scalar]],
                    unit: Dict[int, Scalar],
                    coproduct: Callable[[int], Dict[Tuple[int, int], Scalar]],
                    counit: Callable[[int], Scalar]) -> FiniteBialgebra:
    """Assemble structure tensors from callables on basis indices."""
    d = len(labels)
    mult = field.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            for k, c in product(i, j).items():
                mult[i, j, k] = field.reduce(c)
    unit_vec = field.zeros(d)
    for k, c in unit.items():
        unit_vec[k] = field.reduce(c)
    comult = tuple(
        tuple((j, k, field.reduce(c)) for (j, k), c in sorted(coproduct(i).items()) if not field.is_zero(c))
        for i in range(d)
    )
    counit_vec = field.vector(counit(i) for i in range(d))
    return FiniteBialgebra(field, tuple(labels), mult, unit_vec, comult, counit_vec)


def _bialgebra_fields(B: FiniteBialgebra) -> dict:
    return {f.name: getattr(B, f.name) for f in dataclass_fields(FiniteBialgebra)}


def attach_antipode(B: FiniteBialgebra, antipode: Matrix,
                    antipode_inverse: Optional[Matrix] = None) -> FiniteHopf:
    return FiniteHopf(**_bialgebra_fields(B), antipode=antipode, antipode_inverse=antipode_inverse)


def check_algebra(B: StructureTables, collector: AxiomCollector,
                  render: Optional[Callable[[object], str]] = None) -> None:
    d, table, f = B.dim, B.product_table, B.field
    render = render or B.render
    for i, j, l in itertools.product(range(d), repeat=3):
        lhs: Dict[int, Scalar] = {}
        for k, c in table[i][j].items():
            for t, v in table[k][l].items():
                accumulate(f, lhs, t, c * v)
        rhs: Dict[int, Scalar] = {}
        for k, c in table[j][l].items():
            for t, v in table[i][k].items():
                accumulate(f, rhs, t, c * v)
        collector.compare("associativity", [i, j, l], lhs, rhs, [B.labels[i], B.labels[j], B.labels[l]], render)
    for j in range(d):
        e_j = B.basis_vector(j)
        collector.compare("unit_left", [j], B.multiply(B.unit_sparse, e_j), e_j, [B.labels[j]], render)
        collector.compare("unit_right", [j], B.multiply(e_j, B.unit_sparse), e_j, [B.labels[j]], render)


def check_coalgebra(B: StructureTables, collector: AxiomCollector,
                    render: Optional[Callable[[object], str]] = None) -> None:
    d, f = B.dim, B.field
    render = render or B.render
    for i in range(d):
        delta = B.coproduct_table[i]
        lhs: Dict[Tuple[int, int, int], Scalar] = {}
        rhs: Dict[Tuple[int, int, int], Scalar] = {}
        for (j, k), c in delta.items():
            for (a, b), c2 in B.coproduct_table[j].items():
                accumulate(f, lhs, (a, b, k), c * c2)
            for (a, b), c2 in B.coproduct_table[k].items():
                accumulate(f, rhs, (j, a, b), c * c2)
        collector.compare("coassociativity", [i], lhs, rhs, [B.labels[i]], render)
        left: Dict[int, Scalar] = {}
        right: Dict[int, Scalar] = {}
        for (j, k), c in delta.items():
            accumulate(f, left, k, c * B.counit[j])
            accumulate(f, right, j, c * B.counit[k])
        collector.compare("counit_left", [i], left, B.basis_vector(i), [B.labels[i]], render)
        collector.compare("counit_right", [i], right, B.basis_vector(i), [B.labels[i]], render)


def check_bialgebra(B: FiniteBialgebra, subject: str = "bialgebra") -> AxiomReport:
    """Exhaustive check of the bialgebra axioms on basis elements."""
    collector = AxiomCollector(subject, B.field)
    check_algebra(B, collector)
    check_coalgebra(B, collector)
    d, f = B.dim, B.field
    for i, j in itertools.product(range(d), repeat=2):
        e_i, e_j = B.basis_vector(i), B.basis_vector(j)
        lhs = B.coproduct(B.product_table[i][j])
        rhs = B.multiply_pairs(B.coproduct_table[i], B.coproduct_table[j])
        collector.compare("comult_multiplicative", [i, j], lhs, rhs, [B.labels[i], B.labels[j]], B.render)
        collector.compare_scalars("counit_multiplicative", [i, j], B.counit_of(B.product_table[i][j]),
                                  B.counit[i] * B.counit[j], [B.labels[i], B.labels[j]])
    unit = B.unit_sparse
    collector.compare("comult_unit", [], B.coproduct(unit), {(k, l): f.reduce(a * b) for k, a in unit.items()
                                                             for l, b in unit.items()}, [], B.render)
    collector.compare_scalars("counit_unit", [], B.counit_of(unit), f.one)
    report = collector.report()
    logger.debug("bialgebra_checked", subject=subject, dim=d, failures=len(report.failures))
    return report


def unit_counit(source: StructureTables, target: StructureTables) -> Matrix:
    """The convolution identity u∘ε: source -> target."""
    f = target.field
    array = f.zeros((target.dim, source.dim))
    for i in range(source.dim):
        array[:, i] = f.reduce_array(target.unit * source.counit[i])
    return Matrix._wrap(f, array)


def convolution(f_map: Matrix, g_map: Matrix, C: StructureTables, A: StructureTables) -> Matrix:
    """(f*g)(c) = f(c_(1)) g(c_(2)) for maps C -> A."""
    if f_map.shape != (A.dim, C.dim) or g_map.shape != (A.dim, C.dim):
        raise ShapeError(f"convolution expects maps of shape {(A.dim, C.dim)}")
    fc, gc = f_map.sparse_columns, g_map.sparse_columns
    columns = []
    for i in range(C.dim):
        column: Dict[int, Scalar] = {}
        for (j, k), c in C.coproduct_table[i].items():
            product = A.multiply(fc[j], gc[k])
            for t, v in product.items():
                accumulate(A.field, column, t, c * v)
        columns.append(column)
    return Matrix.from_sparse_columns(A.field, A.dim, columns)


def compute_antipode(B: FiniteBialgebra) -> Matrix:
    """Solve Σ S(e_i(1)) e_i(2) = ε(e_i)1 for the d² entries of S.

    Unknown k*d + j is the coefficient of e_k in S(e_j).
    """
    d, f = B.dim, B.field
    rows: List[Dict[int, Scalar]] = []
    rhs: List[Scalar] = []
    for i in range(d):
        equations: Dict[int, Dict[int, Scalar]] = {t: {} for t in range(d)}
        for (j, kp), c in B.coproduct_table[i].items():
            for k in range(d):
                for t, v in B.product_table[k][kp].items():
                    accumulate(f, equations[t], k * d + j, c * v)
        for t in range(d):
            rows.append(equations[t])
            rhs.append(f.reduce(B.counit[i] * B.unit[t]))
    solution = solve_linear_system(f, rows, rhs, d * d)
    if solution is None:
        raise NoAntipodeError(f"identity of the {d}-dimensional bialgebra has no convolution inverse")
    antipode = Matrix(f, np.array(solution, dtype=object).reshape(d, d))
    identity = Matrix.identity(f, d)
    target = unit_counit(B, B)
    collector = AxiomCollector("antipode", f)
    for name, product in (("S*id", convolution(antipode, identity, B, B)),
                          ("id*S", convolution(identity, antipode, B, B))):
        for i in range(d):
            collector.compare(name, [i], product.sparse_columns[i], target.sparse_columns[i],
                              [B.labels[i]], B.render)
    collector.report().raise_if_failed(NoAntipodeError, "one-sided antipode only")
    logger.debug("antipode_computed", dim=d)
    return antipode


def make_hopf(B: FiniteBialgebra) -> FiniteHopf:
    """Attach the antipode and, when S is bijective, its inverse."""
    antipode = compute_antipode(B)
    try:
        inverse = antipode.inverse()
    except SingularMatrixError:
        inverse = None
    return attach_antipode(B, antipode, inverse)


def opposite(B: FiniteBialgebra) -> FiniteBialgebra:
    return FiniteBialgebra(B.field, B.labels, B.mult.transpose(1, 0, 2).copy(), B.unit.copy(),
                           B.comult, B.counit.copy())


def coopposite(B: FiniteBialgebra) -> FiniteBialgebra:
    comult = tuple(tuple(sorted((k, j, c) for j, k, c in terms)) for terms in B.comult)
    return FiniteBialgebra(B.field, B.labels, B.mult.copy(), B.unit.copy(), comult, B.counit.copy())


def dual(B: FiniteBialgebra) -> FiniteBialgebra:
    """B* in the dual basis: mult is the transpose of Δ and Δ the transpose of m."""
    d, f = B.dim, B.field
    mult = B.comult_tensor.transpose(1, 2, 0).copy()
    comult = tuple(
        tuple((i, j, B.mult[i, j, k]) for i in range(d) for j in range(d) if B.mult[i, j, k] != 0)
        for k in range(d)
    )
    labels = tuple(f"{label}*" for label in B.labels)
    return FiniteBialgebra(f, labels, mult, B.counit.copy(), comult, B.unit.copy())


def opposite_hopf(H: FiniteHopf) -> FiniteHopf:
    """H^op, whose antipode is S⁻¹."""
    inverse = H.require_bijective_antipode()
    return attach_antipode(opposite(H), inverse, H.antipode)


def coopposite_hopf(H: FiniteHopf) -> FiniteHopf:
    inverse = H.require_bijective_antipode()
    return attach_antipode(coopposite(H), inverse, H.antipode)


def dual_hopf(H: FiniteHopf) -> FiniteHopf:
    inverse = H.antipode_inverse.T if H.antipode_inverse is not None else None
    return attach_antipode(dual(H), H.antipode.T, inverse)


def group_elements(orders: Sequence[int]) -> List[Tuple[int, ...]]:
    return list(TensorIndex(tuple(orders)))


def _element_label(element: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, exponent in zip(names, element):
        if exponent == 1:
            parts.append(name)
        elif exponent > 1:
            parts.append(f"{name}^{exponent}")
    return "".join(parts) or "1"


def group_algebra(orders: Sequence[int], field: Field, names: Optional[Sequence[str]] = None) -> GroupAlgebra:
    """k[Z/n_1 × ... × Z/n_k] with every basis element grouplike and S = negation."""
    orders = tuple(int(n) for n in orders)
    if any(n < 1 for n in orders):
        raise ShapeError(f"cyclic orders must be positive, got {orders}")
    if names is None:
        names = ("g",) if len(orders) == 1 else tuple(f"g{r + 1}" for r in range(len(orders)))
    index = TensorIndex(orders)
    elements = list(index)
    labels = tuple(_element_label(e, names) for e in elements)
    d = len(elements)

    def product(i, j):
        a, b = elements[i], elements[j]
        return {index.flatten([(x + y) % n for x, y, n in zip(a, b, orders)]): field.one}

    B = build_bialgebra(
        field, labels, product,
        unit={0: field.one},
        coproduct=lambda i: {(i, i): field.one},
        counit=lambda i: field.one,
    )
    inverse_images = [index.flatten([(-x) % n for x, n in zip(e, orders)]) for e in elements]
    antipode = Matrix.from_sparse_columns(field, d, [{k: field.one} for k in inverse_images])
    return GroupAlgebra(**_bialgebra_fields(B), antipode=antipode, antipode_inverse=antipode,
                        orders=orders, generator_names=tuple(names))


def tensor_bialgebra(U: FiniteBialgebra, A: FiniteBialgebra) -> FiniteBialgebra:
    """The ordinary tensor-product bialgebra U⊗A, U index major."""
    if U.field != A.field:
        raise FieldMismatchError("tensor product over mismatched fields")
    f = U.field
    index = TensorIndex((U.dim, A.dim))
    pairs = list(index)
    labels = tuple(f"{U.labels[u]}⊗{A.labels[a]}" for u, a in pairs)

    def product(x, y):
        (u, a), (v, b) = pairs[x], pairs[y]
        result = {}
        for s, c in U.product_table[u][v].items():
            for t, e in A.product_table[a][b].items():
                accumulate(f, result, index.flatten((s, t)), c * e)
        return result

    def coproduct(x):
        u, a = pairs[x]
        result = {}
        for (u1, u2), c in U.coproduct_table[u].items():
            for (a1, a2), e in A.coproduct_table[a].items():
                accumulate(f, result, (index.flatten((u1, a1)), index.flatten((u2, a2))), c * e)
        return result

    unit = {}
    for s, c in U.unit_sparse.items():
        for t, e in A.unit_sparse.items():
            accumulate(f, unit, index.flatten((s, t)), c * e)
    B = build_bialgebra(f, labels, product, unit, coproduct,
                        lambda x: U.counit[pairs[x][0]] * A.counit[pairs[x][1]])
    if isinstance(U, FiniteHopf) and isinstance(A, FiniteHopf):
        inverse = None
        if U.antipode_inverse is not None and A.antipode_inverse is not None:
            inverse = tensor_of_maps(U.antipode_inverse, A.antipode_inverse)
        return attach_antipode(B, tensor_of_maps(U.antipode, A.antipode), inverse)
    return B


def check_algebra_map(f_map: Matrix, source: StructureTables, target: StructureTables,
                      collector: AxiomCollector) -> None:
    columns = f_map.sparse_columns
    for i, j in itertools.product(range(source.dim), repeat=2):
        lhs = f_map.apply_sparse(source.product_table[i][j])
        rhs = target.multiply(columns[i], columns[j])
        collector.compare("multiplicative", [i, j], lhs, rhs,
                          [source.labels[i], source.labels[j]], target.render)
    collector.compare("unital", [], f_map.apply_sparse(source.unit_sparse), target.unit_sparse, [], target.render)


def check_coalgebra_map(f_map: Matrix, source: StructureTables, target: StructureTables,
                        collector: AxiomCollector) -> None:
    columns = f_map.sparse_columns
    field = target.field
    for i in range(source.dim):
        lhs = target.coproduct(columns[i])
        rhs: Dict[Tuple[int, int], Scalar] = {}
        for (j, k), c in source.coproduct_table[i].items():
            for s, v in columns[j].items():
                for t, w in columns[k].items():
                    accumulate(field, rhs, (s, t), c * v * w)
        collector.compare("comultiplicative", [i], lhs, rhs, [source.labels[i]], target.render)
        collector.compare_scalars("counital", [i], target.counit_of(columns[i]), source.counit[i],
                                  [source.labels[i]])


def check_bialgebra_map(f: BialgebraMap, subject: str = "bialgebra_map") -> AxiomReport:
    collector = AxiomCollector(subject, f.source.field)
    check_algebra_map(f.matrix, f.source, f.target, collector)
    check_coalgebra_map(f.matrix, f.source, f.target, collector)
    return collector.report()


def check_bialgebra_isomorphism(f: BialgebraMap, subject: str = "bialgebra_isomorphism") -> AxiomReport:
    collector = AxiomCollector(subject, f.source.field)
    check_algebra_map(f.matrix, f.source, f.target, collector)
    check_coalgebra_map(f.matrix, f.source, f.target, collector)
    collector.check("bijective")
    if not f.matrix.is_invertible():
        collector.fail("bijective", [], discrepancy={"rank": str(f.matrix.rank()),
                                                     "shape": f"{f.matrix.rows}x{f.matrix.cols}"})
    return collector.report()


def identity_map(B: FiniteBialgebra) -> BialgebraMap:
    return BialgebraMap(B, B, Matrix.identity(B.field, B.dim))


def conjugation_matrix(A: FiniteBialgebra, g: int, g_inverse: int) -> Matrix:
    """Matrix of a ↦ g⁻¹ a g for grouplike basis elements g, g⁻¹."""
    columns = []
    for i in range(A.dim):
        left = A.multiply(A.basis_vector(g_inverse), A.basis_vector(i))
        columns.append(A.multiply(left, A.basis_vector(g)))
    return Matrix.from_sparse_columns(A.field, A.dim, columns)


def matrix_power(matrix: Matrix, n: int) -> Matrix:
    result = Matrix.identity(matrix.field, matrix.rows)
    for _ in range(n):
        result = result @ matrix
    return result


def relations_report(A: StructureTables, generators: Dict[str, int]) -> List[str]:
    """Products of ordered generator pairs and coproducts of the generators."""
    lines = []
    names = list(generators)
    for a in names:
        for b in names:
            product = A.multiply(A.basis_vector(generators[a]), A.basis_vector(generators[b]))
            lines.append(f"{a}·{b} = {A.format_element(product)}")
    for a in names:
        delta = A.coproduct(A.basis_vector(generators[a]))
        lines.append(f"Δ({a}) = {A.format_element(delta)}")
    return lines


def with_labels(B: FiniteBialgebra, labels: Sequence[str]) -> FiniteBialgebra:
    return replace(B, labels=tuple(labels))
