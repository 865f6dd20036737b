"""
Yetter-Drinfel'd modules over a finite Hopf algebra and bialgebras in their category

A module stores ``action[h, m, k]``, the coefficient of e_k in e_h·e_m, and
the coaction as triples: δ(e_m) = Σ c e_h ⊗ e_m'.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import FieldMismatchError, ShapeError
from app.core.logging import get_logger
from app.models.report import AxiomReport
from app.services.axioms import AxiomCollector, render_key, render_mixed
from app.services.exactla import (
    Matrix,
    Scalar,
    TensorIndex,
    accumulate,
    tensor_of_maps,
)
from app.services.hopfcore import (
    BialgebraMap,
    FiniteHopf,
    StructureTables,
    check_algebra,
    check_algebra_map,
    check_coalgebra,
    check_coalgebra_map,
    dual_hopf,
    opposite_hopf,
)

logger = get_logger(__name__)

Sparse = Dict[int, Scalar]


@dataclass(frozen=True, eq=False)
class YDModule:
    """A left-left Yetter-Drinfel'd module over H."""
    H: FiniteHopf
    labels: Tuple[str, ...]
    action: np.ndarray
    coaction: Tuple[Tuple[Tuple[int, int, Scalar], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        n, d = len(self.labels), self.H.dim
        if self.action.shape != (d, n, n):
            raise ShapeError(f"action tensor {self.action.shape} does not fit ({d}, {n}, {n})")
        if len(self.coaction) != n:
            raise ShapeError(f"coaction lists {len(self.coaction)} elements, expected {n}")
        for terms in self.coaction:
            for h, m, _ in terms:
                if not (0 <= h < d and 0 <= m < n):
                    raise ShapeError(f"coaction index ({h}, {m}) out of range")
        self.action.flags.writeable = False

    @property
    def field(self):
        return self.H.field

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def action_table(self) -> List[List[Sparse]]:
        return [
            [{int(k): self.action[h, m, k] for k in np.flatnonzero(self.action[h, m] != 0)}
             for m in range(self.dim)]
            for h in range(self.H.dim)
        ]

    @cached_property
    def coaction_table(self) -> List[Dict[Tuple[int, int], Scalar]]:
        table = []
        for terms in self.coaction:
            entry: Dict[Tuple[int, int], Scalar] = {}
            for h, m, c in terms:
                accumulate(self.field, entry, (h, m), c)
            table.append(entry)
        return table

    def act(self, h: Sparse, m: Sparse) -> Sparse:
        result: Sparse = {}
        for i, a in h.items():
            row = self.action_table[i]
            for j, b in m.items():
                for k, c in row[j].items():
                    accumulate(self.field, result, k, a * b * c)
        return result

    def coact(self, m: Sparse) -> Dict[Tuple[int, int], Scalar]:
        result: Dict[Tuple[int, int], Scalar] = {}
        for j, a in m.items():
            for key, c in self.coaction_table[j].items():
                accumulate(self.field, result, key, a * c)
        return result

    def action_matrix(self, h: int) -> Matrix:
        """Matrix of m ↦ e_h·m."""
        return Matrix._wrap(self.field, self.action[h].T.copy())

    def render(self, key) -> str:
        return render_key(self.labels)(key)

    def render_comodule(self, key) -> str:
        return render_mixed(self.H.labels, self.labels)(key)


@dataclass(frozen=True, eq=False)
class YDMorphism:
    """A linear map between YD modules over a Hopf map φ (identity when base_map is None)."""
    source: YDModule
    target: YDModule
    matrix: Matrix
    base_map: Optional[BialgebraMap] = None

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeError(f"morphism matrix {self.matrix.shape} does not fit "
                             f"{self.source.dim} -> {self.target.dim}")
        if self.source.field != self.target.field:
            raise FieldMismatchError("YD morphism over mismatched fields")
        if self.base_map is None and self.source.H.dim != self.target.H.dim:
            raise ShapeError("an in-category morphism needs a common base Hopf algebra")

    @property
    def base_matrix(self) -> Matrix:
        if self.base_map is not None:
            return self.base_map.matrix
        return Matrix.identity(self.source.field, self.source.H.dim)


def build_yd_module(H: FiniteHopf, labels: Sequence[str],
                    action: Callable[[int, int], Sparse],
                    coaction: Callable[[int], Dict[Tuple[int, int], Scalar]]) -> YDModule:
    f, n = H.field, len(labels)
    tensor = f.zeros((H.dim, n, n))
    for h in range(H.dim):
        for m in range(n):
            for k, c in action(h, m).items():
                tensor[h, m, k] = f.reduce(c)
    triples = tuple(
        tuple((h, m, f.reduce(c)) for (h, m), c in sorted(coaction(j).items()) if not f.is_zero(c))
        for j in range(n)
    )
    return YDModule(H, tuple(labels), tensor, triples)


def trivial_module(H: FiniteHopf, labels: Sequence[str] = ("1",)) -> YDModule:
    """h·m = ε(h)m and δ(m) = 1⊗m."""
    unit = H.unit_sparse
    return build_yd_module(
        H, labels,
        action=lambda h, m: {m: H.counit[h]},
        coaction=lambda m: {(h, m): c for h, c in unit.items()},
    )


def adjoint_module(H: FiniteHopf) -> YDModule:
    """H itself with h·m = h_(1) m S(h_(2)) and δ = Δ."""
    S = H.antipode.sparse_columns

    def action(h, m):
        result: Sparse = {}
        for (h1, h2), c in H.coproduct_table[h].items():
            left = H.multiply(H.basis_vector(h1), H.basis_vector(m))
            for k, v in H.multiply(left, S[h2]).items():
                accumulate(H.field, result, k, c * v)
        return result

    return build_yd_module(H, H.labels, action, lambda m: dict(H.coproduct_table[m]))


def right_hit(M: YDModule, v: Sparse, p: Sparse) -> Sparse:
    """v ↼ p = p(v_(-1)) v_(0) for a functional p on H given by its values."""
    result: Sparse = {}
    for (h, m), c in M.coact(v).items():
        if h in p:
            accumulate(M.field, result, m, c * p[h])
    return result


def check_yd(M: YDModule, subject: Optional[str] = None) -> AxiomReport:
    """Module, comodule and both forms of the Yetter-Drinfel'd compatibility."""
    H, f = M.H, M.field
    collector = AxiomCollector(subject or "yd_module", f)
    n, d = M.dim, H.dim
    for h, k, m in itertools.product(range(d), range(d), range(n)):
        lhs = M.act(H.product_table[h][k], {m: f.one})
        rhs = M.act({h: f.one}, M.action_table[k][m])
        collector.compare("module_associativity", [h, k, m], lhs, rhs,
                          [H.labels[h], H.labels[k], M.labels[m]], M.render)
    for m in range(n):
        collector.compare("module_unit", [m], M.act(H.unit_sparse, {m: f.one}), {m: f.one},
                          [M.labels[m]], M.render)
        delta = M.coaction_table[m]
        lhs: Dict[Tuple[int, int, int], Scalar] = {}
        rhs: Dict[Tuple[int, int, int], Scalar] = {}
        counit: Sparse = {}
        for (h, m0), c in delta.items():
            for (h1, h2), c2 in H.coproduct_table[h].items():
                accumulate(f, lhs, (h1, h2, m0), c * c2)
            for (h2, m1), c2 in M.coaction_table[m0].items():
                accumulate(f, rhs, (h, h2, m1), c * c2)
            accumulate(f, counit, m0, c * H.counit[h])
        render3 = render_mixed(H.labels, H.labels, M.labels)
        collector.compare("comodule_coassociativity", [m], lhs, rhs, [M.labels[m]], render3)
        collector.compare("comodule_counit", [m], counit, {m: f.one}, [M.labels[m]], M.render)

    failures_13 = _check_compatibility_13(M, collector)
    if H.antipode is not None:
        failures_14 = _check_compatibility_14(M, collector)
        collector.check("formulations_agree")
        if (failures_13 == 0) != (failures_14 == 0):
            collector.fail("formulations_agree", [], discrepancy={
                "compatibility_13": str(failures_13), "compatibility_14": str(failures_14)})
    return collector.report()


def _check_compatibility_13(M: YDModule, collector: AxiomCollector) -> int:
    """h_(1) m_(-1) ⊗ h_(2)·m_(0) = (h_(1)·m)_(-1) h_(2) ⊗ (h_(1)·m)_(0)."""
    H, f = M.H, M.field
    before = len(collector.failures)
    for h, m in itertools.product(range(H.dim), range(M.dim)):
        lhs: Dict[Tuple[int, int], Scalar] = {}
        rhs: Dict[Tuple[int, int], Scalar] = {}
        for (h1, h2), c in H.coproduct_table[h].items():
            for (mh, m0), c2 in M.coaction_table[m].items():
                left = H.product_table[h1][mh]
                right = M.action_table[h2][m0]
                for a, v in left.items():
                    for b, w in right.items():
                        accumulate(f, lhs, (a, b), c * c2 * v * w)
            for (xh, x0), c2 in M.coact(M.action_table[h1][m]).items():
                for a, v in H.product_table[xh][h2].items():
                    accumulate(f, rhs, (a, x0), c * c2 * v)
        collector.compare("compatibility_13", [h, m], lhs, rhs, [H.labels[h], M.labels[m]],
                          M.render_comodule)
    return len(collector.failures) - before


def _check_compatibility_14(M: YDModule, collector: AxiomCollector) -> int:
    """δ(h·m) = h_(1) m_(-1) S(h_(3)) ⊗ h_(2)·m_(0)."""
    H, f = M.H, M.field
    S = H.antipode.sparse_columns
    before = len(collector.failures)
    for h, m in itertools.product(range(H.dim), range(M.dim)):
        lhs = M.coact(M.action_table[h][m])
        rhs: Dict[Tuple[int, int], Scalar] = {}
        for (h1, h2, h3), c in H.double_coproduct_table[h].items():
            for (mh, m0), c2 in M.coaction_table[m].items():
                left = H.multiply(H.product_table[h1][mh], S[h3])
                right = M.action_table[h2][m0]
                for a, v in left.items():
                    for b, w in right.items():
                        accumulate(f, rhs, (a, b), c * c2 * v * w)
        collector.compare("compatibility_14", [h, m], lhs, rhs, [H.labels[h], M.labels[m]],
                          M.render_comodule)
    return len(collector.failures) - before


def check_yd_morphism(f: YDMorphism, subject: str = "yd_morphism") -> AxiomReport:
    """φ-linearity f(h·m) = φ(h)·f(m) and φ-colinearity (φ⊗f)δ = δf on basis elements."""
    source, target, field = f.source, f.target, f.source.field
    phi = f.base_matrix.sparse_columns
    columns = f.matrix.sparse_columns
    collector = AxiomCollector(subject, field)
    for h, m in itertools.product(range(source.H.dim), range(source.dim)):
        lhs = f.matrix.apply_sparse(source.action_table[h][m])
        rhs = target.act(phi[h], columns[m])
        collector.compare("linear", [h, m], lhs, rhs, [source.H.labels[h], source.labels[m]], target.render)
    for m in range(source.dim):
        lhs: Dict[Tuple[int, int], Scalar] = {}
        for (h, m0), c in source.coaction_table[m].items():
            for a, v in phi[h].items():
                for b, w in columns[m0].items():
                    accumulate(field, lhs, (a, b), c * v * w)
        rhs = target.coact(columns[m])
        collector.compare("colinear", [m], lhs, rhs, [source.labels[m]], target.render_comodule)
    return collector.report()


def tensor_module(M: YDModule, N: YDModule) -> YDModule:
    """M⊗N with the diagonal action and the codiagonal coaction."""
    if M.H is not N.H and M.H.dim != N.H.dim:
        raise ShapeError("tensor product of YD modules over different Hopf algebras")
    H, f = M.H, M.field
    index = TensorIndex((M.dim, N.dim))
    pairs = list(index)
    labels = tuple(f"{M.labels[a]}⊗{N.labels[b]}" for a, b in pairs)

    def action(h, x):
        a, b = pairs[x]
        result: Sparse = {}
        for (h1, h2), c in H.coproduct_table[h].items():
            for s, v in M.action_table[h1][a].items():
                for t, w in N.action_table[h2][b].items():
                    accumulate(f, result, index.flatten((s, t)), c * v * w)
        return result

    def coaction(x):
        a, b = pairs[x]
        result: Dict[Tuple[int, int], Scalar] = {}
        for (ha, a0), c in M.coaction_table[a].items():
            for (hb, b0), c2 in N.coaction_table[b].items():
                for k, v in H.product_table[ha][hb].items():
                    accumulate(f, result, (k, index.flatten((a0, b0))), c * c2 * v)
        return result

    return build_yd_module(H, labels, action, coaction)


def tensor_power(M: YDModule, d: int) -> YDModule:
    if d == 0:
        return trivial_module(M.H)
    result = M
    for _ in range(d - 1):
        result = tensor_module(result, M)
    return result


def braiding(M: YDModule, N: YDModule) -> Matrix:
    """σ(m⊗n) = m_(-1)·n ⊗ m_(0) as a map M⊗N -> N⊗M."""
    if M.H.dim != N.H.dim or M.field != N.field:
        raise FieldMismatchError("braiding between modules over different bases")
    f = M.field
    source = TensorIndex((M.dim, N.dim))
    target = TensorIndex((N.dim, M.dim))
    columns = []
    for a, b in source:
        column: Sparse = {}
        for (h, a0), c in M.coaction_table[a].items():
            for t, v in N.action_table[h][b].items():
                accumulate(f, column, target.flatten((t, a0)), c * v)
        columns.append(column)
    return Matrix.from_sparse_columns(f, target.size, columns)


def check_braid_relation(M: YDModule) -> AxiomReport:
    """(σ⊗id)(id⊗σ)(σ⊗id) = (id⊗σ)(σ⊗id)(id⊗σ) on M⊗M⊗M."""
    collector = AxiomCollector("braid_relation", M.field)
    c = braiding(M, M)
    identity = Matrix.identity(M.field, M.dim)
    c12, c23 = tensor_of_maps(c, identity), tensor_of_maps(identity, c)
    lhs, rhs = c12 @ c23 @ c12, c23 @ c12 @ c23
    render = render_key(M.labels)
    index = TensorIndex((M.dim,) * 3)
    for x, key in enumerate(index):
        collector.compare("braid_relation", list(key), lhs.sparse_columns[x], rhs.sparse_columns[x],
                          [M.labels[k] for k in key],
                          lambda flat: render(index.unflatten(flat)))
    return collector.report()


def check_braiding_morphism(M: YDModule, N: YDModule) -> AxiomReport:
    morphism = YDMorphism(tensor_module(M, N), tensor_module(N, M), braiding(M, N))
    return check_yd_morphism(morphism, subject="braiding_morphism")


def underline_op_module(M: YDModule) -> YDModule:
    """Same comodule; h·_op m = S⁻¹(h)·m, as a module over H^op."""
    H_op = opposite_hopf(M.H)
    inverse = M.H.require_bijective_antipode()
    f = M.field
    action = f.reduce_array(np.tensordot(inverse.entries, M.action, axes=([0], [0])))
    return YDModule(H_op, M.labels, action, M.coaction)


def underline_dual_module(M: YDModule) -> YDModule:
    """M* over H*: the coaction transposes the action and the action transposes the coaction."""
    H_dual = dual_hopf(M.H)
    f, n = M.field, M.dim
    action = f.zeros((M.H.dim, n, n))
    for m2 in range(n):
        for (h, m), c in M.coaction_table[m2].items():
            action[h, m, m2] = c
    coaction = tuple(
        tuple((h, m1, M.action[h, m1, m]) for h in range(M.H.dim) for m1 in range(n) if M.action[h, m1, m] != 0)
        for m in range(n)
    )
    labels = tuple(f"{label}*" for label in M.labels)
    return YDModule(H_dual, labels, action, coaction)


@dataclass(frozen=True, eq=False)
class YDBialgebra(StructureTables):
    """An algebra, coalgebra or bialgebra in the category of YD modules over H.

    Either structure may be None. ``degrees`` tags a graded basis and
    ``truncated_at`` marks products past that degree as discarded.
    """
    module: YDModule
    mult: Optional[np.ndarray] = None
    unit: Optional[np.ndarray] = None
    comult: Optional[Tuple[Tuple[Tuple[int, int, Scalar], ...], ...]] = None
    counit: Optional[np.ndarray] = None
    degrees: Optional[Tuple[int, ...]] = None
    truncated_at: Optional[int] = None

    def __post_init__(self):
        d = self.module.dim
        if (self.mult is None) != (self.unit is None) or (self.comult is None) != (self.counit is None):
            raise ShapeError("a structure needs both its (co)multiplication and its (co)unit")
        if self.mult is not None and (self.mult.shape != (d, d, d) or self.unit.shape != (d,)):
            raise ShapeError(f"algebra tensors do not match dimension {d}")
        if self.comult is not None and (len(self.comult) != d or self.counit.shape != (d,)):
            raise ShapeError(f"coalgebra tensors do not match dimension {d}")
        if self.degrees is not None and len(self.degrees) != d:
            raise ShapeError("one degree tag per basis element is required")

    @property
    def field(self):
        return self.module.field

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.module.labels

    @property
    def H(self) -> FiniteHopf:
        return self.module.H

    def basis_vector(self, i: int) -> Sparse:
        return {i: self.field.one}

    def within_cap(self, *indices: int) -> bool:
        if self.truncated_at is None or self.degrees is None:
            return True
        return sum(self.degrees[i] for i in indices) <= self.truncated_at

    def braided_multiply_pairs(self, x: Dict[Tuple[int, int], Scalar],
                               y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
        """Product in R⊗̲R: (a⊗b)(a'⊗b') = a(b_(-1)·a') ⊗ b_(0)b'."""
        return braided_product(self, self, x, y)


def braided_product(A: YDBialgebra, B: YDBialgebra, x: Dict[Tuple[int, int], Scalar],
                    y: Dict[Tuple[int, int], Scalar]) -> Dict[Tuple[int, int], Scalar]:
    f = A.field
    result: Dict[Tuple[int, int], Scalar] = {}
    for (a, b), c1 in x.items():
        for (a2, b2), c2 in y.items():
            for (h, b0), c3 in B.module.coaction_table[b].items():
                moved = A.module.action_table[h][a2]
                if not moved:
                    continue
                left = A.multiply({a: f.one}, moved)
                right = B.product_table[b0][b2]
                for s, v in left.items():
                    for t, w in right.items():
                        accumulate(f, result, (s, t), c1 * c2 * c3 * v * w)
    return result


def build_yd_bialgebra(module: YDModule,
                       product: Optional[Callable[[int, int], Sparse]] = None,
                       unit: Optional[Sparse] = None,
                       coproduct: Optional[Callable[[int], Dict[Tuple[int, int], Scalar]]] = None,
                       counit: Optional[Callable[[int], Scalar]] = None,
                       degrees: Optional[Sequence[int]] = None,
                       truncated_at: Optional[int] = None) -> YDBialgebra:
    f, d = module.field, module.dim
    mult = unit_vec = comult = counit_vec = None
    if product is not None:
        mult = f.zeros((d, d, d))
        for i, j in itertools.product(range(d), repeat=2):
            for k, c in product(i, j).items():
                mult[i, j, k] = f.reduce(c)
        unit_vec = f.zeros(d)
        for k, c in (unit or {}).items():
            unit_vec[k] = f.reduce(c)
    if coproduct is not None:
        comult = tuple(
            tuple((j, k, f.reduce(c)) for (j, k), c in sorted(coproduct(i).items()) if not f.is_zero(c))
            for i in range(d)
        )
        counit_vec = f.vector(counit(i) for i in range(d))
    return YDBialgebra(module, mult, unit_vec, comult, counit_vec,
                       tuple(degrees) if degrees is not None else None, truncated_at)


def trivial_yd_bialgebra(H: FiniteHopf) -> YDBialgebra:
    """The unit object k as a bialgebra in the category."""
    one = H.field.one
    return build_yd_bialgebra(
        trivial_module(H),
        product=lambda i, j: {0: one},
        unit={0: one},
        coproduct=lambda i: {(0, 0): one},
        counit=lambda i: one,
        degrees=(0,),
    )


def with_module(R: YDBialgebra, module: YDModule) -> YDBialgebra:
    return YDBialgebra(module, R.mult, R.unit, R.comult, R.counit, R.degrees, R.truncated_at)


def check_yd_bialgebra(R: YDBialgebra, subject: str = "yd_bialgebra") -> AxiomReport:
    """All structure maps are morphisms in the category, plus the braided bialgebra law."""
    f, H, M = R.field, R.H, R.module
    collector = AxiomCollector(subject, f)
    collector.merge(check_yd(M), prefix="module")
    d, dH = R.dim, H.dim
    if R.has_algebra:
        check_algebra(R, collector)
        for h, a, b in itertools.product(range(dH), range(d), range(d)):
            lhs = M.act({h: f.one}, R.product_table[a][b])
            rhs: Sparse = {}
            for (h1, h2), c in H.coproduct_table[h].items():
                for k, v in R.multiply(M.action_table[h1][a], M.action_table[h2][b]).items():
                    accumulate(f, rhs, k, c * v)
            collector.compare("mult_linear", [h, a, b], lhs, rhs,
                              [H.labels[h], R.labels[a], R.labels[b]], R.render)
        for a, b in itertools.product(range(d), repeat=2):
            lhs = M.coact(R.product_table[a][b])
            rhs = {}
            for (ha, a0), c in M.coaction_table[a].items():
                for (hb, b0), c2 in M.coaction_table[b].items():
                    left = H.product_table[ha][hb]
                    right = R.product_table[a0][b0]
                    for s, v in left.items():
                        for t, w in right.items():
                            accumulate(f, rhs, (s, t), c * c2 * v * w)
            collector.compare("mult_colinear", [a, b], lhs, rhs, [R.labels[a], R.labels[b]], M.render_comodule)
        unit = R.unit_sparse
        for h in range(dH):
            collector.compare("unit_linear", [h], M.act({h: f.one}, unit),
                              {k: c * H.counit[h] for k, c in unit.items()}, [H.labels[h]], R.render)
        expected = {(hk, k): hc * c for hk, hc in H.unit_sparse.items() for k, c in unit.items()}
        collector.compare("unit_colinear", [], M.coact(unit), expected, [], M.render_comodule)
    if R.has_coalgebra:
        check_coalgebra(R, collector)
        for h, c_ in itertools.product(range(dH), range(d)):
            lhs = R.coproduct(M.action_table[h][c_])
            rhs = {}
            for (h1, h2), c in H.coproduct_table[h].items():
                for (x, y), c2 in R.coproduct_table[c_].items():
                    for s, v in M.action_table[h1][x].items():
                        for t, w in M.action_table[h2][y].items():
                            accumulate(f, rhs, (s, t), c * c2 * v * w)
            collector.compare("comult_linear", [h, c_], lhs, rhs, [H.labels[h], R.labels[c_]], R.render)
            collector.compare_scalars("counit_linear", [h, c_], R.counit_of(M.action_table[h][c_]),
                                      H.counit[h] * R.counit[c_], [H.labels[h], R.labels[c_]])
        render3 = render_mixed(H.labels, R.labels, R.labels)
        for c_ in range(d):
            lhs = {}
            for (x, y), c in R.coproduct_table[c_].items():
                for (hx, x0), c2 in M.coaction_table[x].items():
                    for (hy, y0), c3 in M.coaction_table[y].items():
                        for k, v in H.product_table[hx][hy].items():
                            accumulate(f, lhs, (k, x0, y0), c * c2 * c3 * v)
            rhs = {}
            for (h, c0), c in M.coaction_table[c_].items():
                for (x, y), c2 in R.coproduct_table[c0].items():
                    accumulate(f, rhs, (h, x, y), c * c2)
            collector.compare("comult_colinear", [c_], lhs, rhs, [R.labels[c_]], render3)
            counit_lhs: Sparse = {}
            for (h, c0), c in M.coaction_table[c_].items():
                accumulate(f, counit_lhs, h, c * R.counit[c0])
            counit_rhs = {k: v * R.counit[c_] for k, v in H.unit_sparse.items()}
            collector.compare("counit_colinear", [c_], counit_lhs, counit_rhs, [R.labels[c_]],
                              render_key(H.labels))
    if R.has_algebra and R.has_coalgebra:
        for a, b in itertools.product(range(d), repeat=2):
            if not R.within_cap(a, b):
                continue
            lhs = R.coproduct(R.product_table[a][b])
            rhs = R.braided_multiply_pairs(R.coproduct_table[a], R.coproduct_table[b])
            collector.compare("braided_bialgebra", [a, b], lhs, rhs, [R.labels[a], R.labels[b]], R.render)
            collector.compare_scalars("counit_multiplicative", [a, b], R.counit_of(R.product_table[a][b]),
                                      R.counit[a] * R.counit[b], [R.labels[a], R.labels[b]])
        unit = R.unit_sparse
        collector.compare("comult_unit", [], R.coproduct(unit),
                          {(k, l): f.reduce(x * y) for k, x in unit.items() for l, y in unit.items()},
                          [], R.render)
        collector.compare_scalars("counit_unit", [], R.counit_of(unit), f.one)
    report = collector.report()
    logger.debug("yd_bialgebra_checked", subject=subject, dim=d, failures=len(report.failures))
    return report


def braided_tensor_algebra(A: YDBialgebra, B: YDBialgebra) -> YDBialgebra:
    """A⊗̲B with (a⊗b)(a'⊗b') = a(b_(-1)·a') ⊗ b_(0)b'."""
    if not (A.has_algebra and B.has_algebra):
        raise ShapeError("braided tensor algebra needs two algebras")
    module = tensor_module(A.module, B.module)
    index = TensorIndex((A.dim, B.dim))
    pairs = list(index)
    f = A.field

    def product(x, y):
        value = braided_product(A, B, {pairs[x]: f.one}, {pairs[y]: f.one})
        return {index.flatten(key): c for key, c in value.items()}

    unit = {index.flatten((s, t)): a * b for s, a in A.unit_sparse.items() for t, b in B.unit_sparse.items()}
    return build_yd_bialgebra(module, product=product, unit=unit)


def braided_tensor_coalgebra(C: YDBialgebra, D: YDBialgebra) -> YDBialgebra:
    """C⊗̄D with Δ(c⊗d) = (c^(1) ⊗ c^(2)_(-1)·d^(1)) ⊗ (c^(2)_(0) ⊗ d^(2))."""
    if not (C.has_coalgebra and D.has_coalgebra):
        raise ShapeError("braided tensor coalgebra needs two coalgebras")
    module = tensor_module(C.module, D.module)
    index = TensorIndex((C.dim, D.dim))
    pairs = list(index)
    f = C.field

    def coproduct(x):
        c_, d_ = pairs[x]
        result: Dict[Tuple[int, int], Scalar] = {}
        for (c1, c2), a in C.coproduct_table[c_].items():
            for (h, c20), b in C.module.coaction_table[c2].items():
                for (d1, d2), e in D.coproduct_table[d_].items():
                    for t, v in D.module.action_table[h][d1].items():
                        key = (index.flatten((c1, t)), index.flatten((c20, d2)))
                        accumulate(f, result, key, a * b * e * v)
        return result

    return build_yd_bialgebra(module, coproduct=coproduct,
                              counit=lambda x: C.counit[pairs[x][0]] * D.counit[pairs[x][1]])


def underline_op_bialgebra(R: YDBialgebra) -> YDBialgebra:
    """R over H^op with m(a⊗b) = ba and Δ(c) = c^(2)_(-1)·_op c^(1) ⊗ c^(2)_(0)."""
    module = underline_op_module(R.module)
    f = R.field
    mult = R.mult.transpose(1, 0, 2).copy() if R.has_algebra else None
    comult = None
    if R.has_coalgebra:
        terms_per_element = []
        for c_ in range(R.dim):
            result: Dict[Tuple[int, int], Scalar] = {}
            for (c1, c2), a in R.coproduct_table[c_].items():
                for (h, c20), b in R.module.coaction_table[c2].items():
                    for t, v in module.action_table[h][c1].items():
                        accumulate(f, result, (t, c20), a * b * v)
            terms_per_element.append(tuple((j, k, c) for (j, k), c in sorted(result.items())))
        comult = tuple(terms_per_element)
    return YDBialgebra(module, mult, R.unit, comult, R.counit, R.degrees, R.truncated_at)


def underline_op_algebra(A: YDBialgebra) -> YDBialgebra:
    return underline_op_bialgebra(YDBialgebra(A.module, A.mult, A.unit, degrees=A.degrees,
                                              truncated_at=A.truncated_at))


def underline_op_coalgebra(C: YDBialgebra) -> YDBialgebra:
    return underline_op_bialgebra(YDBialgebra(C.module, comult=C.comult, counit=C.counit,
                                              degrees=C.degrees, truncated_at=C.truncated_at))


def underline_dual_bialgebra(R: YDBialgebra) -> YDBialgebra:
    """R* over H*: (fg)(c) = f(c^(1))g(c^(2)) and Δf(a⊗b) = f(ab)."""
    module = underline_dual_module(R.module)
    d = R.dim
    mult = unit = comult = counit = None
    if R.has_coalgebra:
        mult = R.comult_tensor.transpose(1, 2, 0).copy()
        unit = R.counit.copy()
    if R.has_algebra:
        comult = tuple(
            tuple((i, j, R.mult[i, j, k]) for i in range(d) for j in range(d) if R.mult[i, j, k] != 0)
            for k in range(d)
        )
        counit = R.unit.copy()
    return YDBialgebra(module, mult, unit, comult, counit, R.degrees, R.truncated_at)


def underline_dual_algebra(A: YDBialgebra) -> YDBialgebra:
    """The coalgebra A* of an algebra in the category."""
    return underline_dual_bialgebra(YDBialgebra(A.module, A.mult, A.unit, degrees=A.degrees))


def underline_dual_coalgebra(C: YDBialgebra) -> YDBialgebra:
    """The algebra C* of a coalgebra in the category."""
    return underline_dual_bialgebra(YDBialgebra(C.module, comult=C.comult, counit=C.counit, degrees=C.degrees))


def check_algebra_coalgebra_map(matrix: Matrix, source: StructureTables, target: StructureTables,
                                subject: str = "algebra_coalgebra_map") -> AxiomReport:
    """k-linear algebra and coalgebra map check between structures that carry both."""
    collector = AxiomCollector(subject, source.field)
    if source.has_algebra and target.has_algebra:
        check_algebra_map(matrix, source, target, collector)
    if source.has_coalgebra and target.has_coalgebra:
        check_coalgebra_map(matrix, source, target, collector)
    return collector.report()


def same_yd_structure(R: YDBialgebra, S: YDBialgebra) -> bool:
    """Equality of all structure constants, including the module data."""
    if R.dim != S.dim or R.field != S.field or R.H.dim != S.H.dim:
        return False
    f = R.field

    def equal(x, y):
        if x is None or y is None:
            return x is None and y is None
        return not np.any(f.reduce_array(np.asarray(x, dtype=object) - np.asarray(y, dtype=object)) != 0)

    return (
        equal(R.module.action, S.module.action)
        and R.module.coaction_table == S.module.coaction_table
        and equal(R.mult, S.mult) and equal(R.unit, S.unit)
        and equal(R.counit, S.counit)
        and (R.comult is None) == (S.comult is None)
        and (R.comult is None or R.coproduct_table == S.coproduct_table)
    )
