"""
Tests for finite bialgebras, antipodes and group algebras
"""

import pytest
from hypothesis import given, settings, strategies as st

from app.core.exceptions import NoAntipodeError, ShapeError
from app.services.exactla import Field, Matrix
from app.services.hopfcore import (
    BialgebraMap,
    FiniteBialgebra,
    build_bialgebra,
    check_bialgebra,
    check_bialgebra_isomorphism,
    compute_antipode,
    conjugation_matrix,
    convolution,
    coopposite,
    dual,
    group_algebra,
    identity_map,
    make_hopf,
    opposite,
    relations_report,
    tensor_bialgebra,
    unit_counit,
)

F7 = Field.prime(7)


def _idempotent_monoid(field):
    """k{1, e} with e² = e and e grouplike: a bialgebra without antipode."""
    return build_bialgebra(
        field, ("1", "e"),
        product=lambda i, j: {max(i, j): field.one},
        unit={0: field.one},
        coproduct=lambda i: {(i, i): field.one},
        counit=lambda i: field.one,
    )


def test_group_algebra_basics(Q):
    G = group_algebra([2, 3], Q)
    assert G.dim == 6
    assert G.labels[0] == "1"
    assert check_bialgebra(G).passed
    g = G.generator_index(1)
    assert G.element(g) == (0, 1)
    assert G.multiply({g: 1}, {G.inverse_index(g): 1}) == {0: 1}


def test_character_values(z3_f7):
    square = z3_f7.element_index((2,))
    assert z3_f7.character_value([2], square) == 4
    assert z3_f7.labels[square] == "g^2"


def test_computed_antipode_matches_group_inverse(Q):
    G = group_algebra([3], Q)
    assert compute_antipode(G) == G.antipode


def test_bialgebra_without_antipode(Q):
    B = _idempotent_monoid(Q)
    assert check_bialgebra(B).passed
    with pytest.raises(NoAntipodeError):
        compute_antipode(B)


def test_broken_multiplication_is_reported(Q, z2):
    mult = z2.mult.copy()
    mult[1, 1, 0] = 2
    broken = FiniteBialgebra(Q, z2.labels, mult, z2.unit.copy(), z2.comult, z2.counit.copy())
    report = check_bialgebra(broken)
    assert not report.passed
    assert "counit_multiplicative" in report.failed_axioms()
    assert "comult_multiplicative" in report.failed_axioms()


def test_shape_mismatch(Q, z2):
    with pytest.raises(ShapeError):
        FiniteBialgebra(Q, ("1",), z2.mult, z2.unit, z2.comult, z2.counit)


def test_make_hopf_on_sweedler(sweedler):
    hopf = make_hopf(sweedler.A.bialgebra)
    assert hopf.antipode == sweedler.A.antipode
    assert hopf.has_bijective_antipode


def test_double_dual_and_double_opposite(sweedler):
    A = sweedler.A
    assert dual(dual(A)).same_structure(A)
    assert opposite(opposite(A)).same_structure(A)
    assert coopposite(coopposite(A)).same_structure(A)
    for transported in (dual(A), opposite(A), coopposite(A)):
        assert check_bialgebra(transported).passed


def test_tensor_bialgebra(z2):
    T = tensor_bialgebra(z2, z2)
    assert T.dim == 4
    assert check_bialgebra(T).passed


def test_bialgebra_isomorphism(z2, Q):
    assert check_bialgebra_isomorphism(identity_map(z2)).passed
    zero = BialgebraMap(z2, z2, Matrix.zeros(Q, 2, 2))
    assert "bijective" in check_bialgebra_isomorphism(zero).failed_axioms()
    with pytest.raises(ShapeError):
        BialgebraMap(z2, z2, Matrix.zeros(Q, 3, 2))


def test_antipode_is_convolution_inverse_of_identity(sweedler):
    A = sweedler.A
    identity = Matrix.identity(A.field, A.dim)
    assert convolution(A.antipode, identity, A, A) == unit_counit(A, A)
    assert convolution(identity, A.antipode, A, A) == unit_counit(A, A)


square_entries = st.lists(st.lists(st.integers(min_value=0, max_value=6), min_size=3, max_size=3),
                          min_size=3, max_size=3)


@given(f=square_entries, g=square_entries, h=square_entries)
@settings(max_examples=25, deadline=None)
def test_convolution_is_associative(f, g, h):
    G = group_algebra([3], F7)
    a, b, c = Matrix(F7, f), Matrix(F7, g), Matrix(F7, h)
    left = convolution(convolution(a, b, G, G), c, G, G)
    right = convolution(a, convolution(b, c, G, G), G, G)
    assert left == right


def test_conjugation_by_grouplike_in_sweedler(sweedler):
    A = sweedler.A
    g = sweedler.element(0, 1)
    conjugation = conjugation_matrix(A, g, g)
    assert conjugation == A.antipode @ A.antipode


def test_relations_report(z2):
    lines = relations_report(z2, {"g": 1})
    assert lines == ["g·g = 1", "Δ(g) = g⊗g"]
