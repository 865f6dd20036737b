"""
Tests for Yetter-Drinfel'd modules and bialgebras in their category
"""

import pytest

from app.core.exceptions import ShapeError
from app.services.exactla import Matrix
from app.services.hopfcore import group_algebra
from app.services.nichols import diagonal_yd
from app.services.ydcat import (
    YDMorphism,
    adjoint_module,
    braided_tensor_algebra,
    braided_tensor_coalgebra,
    braiding,
    build_yd_module,
    check_braid_relation,
    check_braiding_morphism,
    check_yd,
    check_yd_bialgebra,
    check_yd_morphism,
    right_hit,
    same_yd_structure,
    tensor_module,
    tensor_power,
    trivial_module,
    trivial_yd_bialgebra,
    underline_dual_bialgebra,
    underline_dual_coalgebra,
    underline_dual_module,
    underline_op_algebra,
    underline_op_bialgebra,
    underline_op_module,
)


@pytest.fixture(scope="module")
def qplane(Q):
    H = group_algebra([2, 2], Q)
    return diagonal_yd(H, [(1, 0), (0, 1)], [(-1, 1), (1, -1)], ["x1", "x2"])


def test_trivial_and_adjoint_modules(z2, sweedler):
    assert check_yd(trivial_module(z2)).passed
    assert check_yd(adjoint_module(z2)).passed
    assert check_yd(adjoint_module(sweedler.A)).passed


def test_diagonal_module_is_yd(sweedler_V, qplane):
    for V in (sweedler_V, qplane):
        assert check_yd(V.module).passed
        assert check_braid_relation(V.module).passed
        assert check_braiding_morphism(V.module, V.module).passed


def test_non_module_action_is_reported(Q, z2):
    M = build_yd_module(z2, ["m"], action=lambda h, m: {m: 2 if h == 1 else 1},
                        coaction=lambda m: {(0, m): Q.one})
    report = check_yd(M)
    assert "module_associativity" in report.failed_axioms()


def test_braiding_coefficients(sweedler_V, qplane):
    assert braiding(sweedler_V.module, sweedler_V.module).to_strings() == [["-1/1"]]
    assert qplane.braiding_matrix() == [[-1, 1], [1, -1]]


def test_tensor_modules(sweedler_V, qplane):
    assert tensor_module(qplane.module, qplane.module).dim == 4
    assert tensor_power(sweedler_V.module, 0).dim == 1
    assert tensor_power(sweedler_V.module, 3).dim == 1
    assert check_yd(tensor_module(qplane.module, qplane.module)).passed


def test_right_hit_reads_the_grade(Q, qplane):
    H = qplane.H
    g1 = H.element_index((1, 0))
    assert right_hit(qplane.module, {0: Q.one}, {g1: Q(5)}) == {0: 5}
    assert right_hit(qplane.module, {1: Q.one}, {g1: Q(5)}) == {}


def test_transported_modules(sweedler_V, taft_V):
    for V in (sweedler_V, taft_V):
        assert check_yd(underline_op_module(V.module)).passed
        assert check_yd(underline_dual_module(V.module)).passed


def test_morphisms(Q, qplane):
    M = qplane.module
    assert check_yd_morphism(YDMorphism(M, M, Matrix.identity(Q, 2))).passed
    swap = Matrix(Q, [[0, 1], [1, 0]])
    report = check_yd_morphism(YDMorphism(M, M, swap))
    assert not report.passed
    with pytest.raises(ShapeError):
        YDMorphism(M, M, Matrix.identity(Q, 3))


def test_yd_bialgebras(z2, sweedler_nichols, taft_nichols):
    assert check_yd_bialgebra(trivial_yd_bialgebra(z2)).passed
    for N in (sweedler_nichols, taft_nichols):
        R = N.algebra
        assert check_yd_bialgebra(R).passed
        assert check_yd_bialgebra(underline_op_bialgebra(R)).passed
        assert check_yd_bialgebra(underline_dual_bialgebra(R)).passed
        assert same_yd_structure(R, R)


def test_braided_tensor_products(sweedler_nichols):
    R = sweedler_nichols.algebra
    algebra = braided_tensor_algebra(R, R)
    assert algebra.dim == 4
    assert not algebra.has_coalgebra
    assert check_yd_bialgebra(algebra).passed
    # (1⊗x)(x⊗1) = (g·x)⊗x
    assert algebra.product_table[1][2] == {3: -1}
    assert algebra.product_table[2][1] == {3: 1}
    coalgebra = braided_tensor_coalgebra(R, R)
    assert not coalgebra.has_algebra
    assert check_yd_bialgebra(coalgebra).passed


def test_braided_tensor_algebra_needs_algebras(sweedler_nichols):
    coalgebra = braided_tensor_coalgebra(sweedler_nichols.algebra, sweedler_nichols.algebra)
    with pytest.raises(ShapeError):
        braided_tensor_algebra(coalgebra, coalgebra)


def test_one_sided_transports(taft_nichols):
    R = taft_nichols.algebra
    op = underline_op_algebra(R)
    assert not op.has_coalgebra
    assert check_yd_bialgebra(op).passed
    dual = underline_dual_coalgebra(R)
    assert dual.has_algebra and not dual.has_coalgebra
    assert check_yd_bialgebra(dual).passed
