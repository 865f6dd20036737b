"""
Tests for Radford biproducts R#H and the transported isomorphisms
"""

import pytest

from app.core.exceptions import IncompleteNicholsError
from app.services.biproduct import (
    antipode_square_report,
    biproduct_morphism,
    build_biproduct,
    dual_biproduct,
    op_biproduct,
    op_dual_commutation_report,
    op_triangle_report,
    recover_R,
)
from app.services.exactla import Matrix
from app.services.hopfcore import check_bialgebra, coopposite, dual, identity_map, opposite
from app.services.nichols import diagonal_yd, nichols_truncate
from app.services.ydcat import check_yd_bialgebra


def test_sweedler_basis_layout(sweedler):
    assert sweedler.A.dim == 4
    assert sweedler.element(0, 1) == 1
    assert sweedler.element(1, 0) == 2
    assert sweedler.A.labels == ("1#1", "1#g", "x#1", "x#g")


def test_sweedler_smash_product(sweedler):
    A = sweedler.A
    g, x = {1: 1}, {2: 1}
    assert A.multiply(g, x) == {3: -1}
    assert A.multiply(x, g) == {3: 1}
    assert A.multiply(x, x) == {}
    assert A.multiply(g, g) == {0: 1}


def test_sweedler_smash_coproduct(sweedler):
    assert sweedler.A.coproduct({2: 1}) == {(2, 0): 1, (1, 2): 1}
    assert sweedler.A.coproduct({1: 1}) == {(1, 1): 1}


def test_biproduct_invariants(sweedler, taft):
    for B in (sweedler, taft):
        assert B.report.passed
        assert check_bialgebra(B.A).passed
        assert (B.pi.matrix @ B.j.matrix).is_identity()
        assert B.A.has_bijective_antipode
    assert taft.A.dim == 9


def test_antipode_square_is_conjugation(sweedler, taft):
    assert antipode_square_report(sweedler, 1).passed
    assert antipode_square_report(taft, 1).passed


def test_recovered_coinvariants(sweedler, taft):
    for B in (sweedler, taft):
        R = recover_R(B.A, B.H, B.j, B.pi)
        assert R.dim == B.R.dim
        assert check_yd_bialgebra(R).passed


def test_op_and_dual_biproducts(sweedler, taft):
    for B in (sweedler, taft):
        op = op_biproduct(B)
        assert op.report.passed
        assert (op.inverse @ op.matrix).is_identity()
        dual_iso = dual_biproduct(B)
        assert dual_iso.report.passed
        assert dual_iso.target.dim == B.A.dim


@pytest.mark.parametrize("fixture", ["sweedler", "taft"])
def test_op_and_dual_commute_up_to_cop(request, fixture):
    B = request.getfixturevalue(fixture)
    assert dual(opposite(B.A)).same_structure(coopposite(dual(B.A)))
    report = op_dual_commutation_report(B)
    assert report.passed
    assert "A:structure" in report.checked
    assert "op_dual:A:antipode" in dual_biproduct(B).report.checked


def test_op_triangle_uses_recovered_coinvariants(F7, taft):
    op = op_biproduct(taft)
    assert "triangle" in op.report.checked
    assert op_triangle_report(taft, op.matrix).passed
    # r#h -> r#h ignores the reordering j(h)r, which the recovered map sees
    wrong = op_triangle_report(taft, Matrix.identity(F7, taft.A.dim))
    assert wrong.failed_axioms() == ["triangle"]


def test_identity_morphism_of_biproducts(sweedler):
    psi = Matrix.identity(sweedler.R.field, sweedler.R.dim)
    smash = biproduct_morphism(psi, identity_map(sweedler.H), sweedler, sweedler)
    assert smash.matrix.is_identity()


def test_truncated_algebra_is_rejected(z2):
    V = diagonal_yd(z2, [(1,)], [(1,)], ["x"])
    N = nichols_truncate(V.module, 3)
    with pytest.raises(IncompleteNicholsError):
        build_biproduct(N.algebra, z2)
