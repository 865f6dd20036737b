"""
Tests for twist data, cocycles, β#τ and the reduction to a nondegenerate datum
"""

import pytest

from app.core.exceptions import IncompatibleDatumError, NotInjectiveOnSupportError, ScenarioError, ShapeError
from app.services.exactla import Matrix
from app.services.forms import Form, counit_form, form_from_function
from app.services.hopfcore import tensor_bialgebra
from app.services.twist import (
    GroupTwistDatum,
    beta_smash_tau,
    build_group_datum,
    check_axioms_A,
    check_axioms_B,
    check_axioms_C,
    check_cocycle,
    compatibility_violations,
    convolution_inverse_form,
    form_convolution,
    phi_generators,
    reduce_datum,
    sigma_from_tau,
    twist_bialgebra,
    twist_datum,
)


def _two_generator_datum(field, lambdas, s) -> GroupTwistDatum:
    return GroupTwistDatum(
        field=field,
        lambda_orders=(2,),
        gamma_orders=(2,),
        w_grades=((1,), (1,)),
        w_characters=((-1,), (-1,)),
        v_grades=((1,),),
        v_characters=((-1,),),
        phi=((-1,),),
        s=s,
        lambdas=lambdas,
    )


@pytest.fixture(scope="module")
def sweedler_twist(sweedler_datum):
    return twist_datum(sweedler_datum)


@pytest.fixture(scope="module")
def taft_datum(taft_group_datum):
    return build_group_datum(taft_group_datum, cap=6)


def test_bicharacter_satisfies_axioms_A(sweedler_datum):
    d = sweedler_datum
    assert check_axioms_A(d.tau, d.K, d.H).passed
    assert d.tau.at(1, 1) == -1


def test_non_normalized_form_fails_axioms_A(Q, z2):
    bad = form_from_function(z2, z2, lambda i, j: Q(2), name="bad")
    assert "A.2" in check_axioms_A(bad, z2, z2).failed_axioms()


def test_lifted_pairing_satisfies_axioms_B_and_C(sweedler_datum):
    d = sweedler_datum
    assert check_axioms_B(d.lifted.form, d.W_nichols.algebra, d.V_nichols.algebra).passed
    assert check_axioms_C(d.tau, d.beta, d.W, d.V).passed
    assert d.report.passed


def test_convolution_inverse_of_bicharacter(taft_datum):
    d = taft_datum
    z = d.K.element_index((1,))
    g = d.H.element_index((1,))
    assert d.tau.at(z, g) == 4
    inverse = convolution_inverse_form(d.tau, d.K, d.H)
    assert inverse.at(z, g) == 2
    assert form_convolution(d.tau, inverse, d.K, d.H).matrix == counit_form(d.K, d.H).matrix
    assert convolution_inverse_form(d.tau, d.K, d.H, side="right").matrix == inverse.matrix
    assert d.U.A.dim == 9
    assert d.A.A.dim == 9


def test_taft_beta_smash_tau(taft_datum):
    d = taft_datum
    smash = beta_smash_tau(d.lifted.form, d.tau, d.U, d.A)
    assert smash.report.passed
    for axiom in ("smash:A.1", "smash:A.2", "smash:A.3", "smash:A.4",
                  "factorization_right", "factorization_left", "rank_product"):
        assert axiom in smash.report.checked
    assert smash.form.rank() == 9


def test_taft_twist(taft_datum):
    result = twist_datum(taft_datum)
    assert result.smash.report.passed
    assert result.twisted.report.passed
    assert result.twisted.bialgebra.dim == 81


def test_inconsistent_degree_two_pairing_fails_B1(F7, taft_datum):
    d = taft_datum
    values = [[d.lifted.form.at(i, j) for j in range(3)] for i in range(3)]
    assert values[2][2] == 5
    values[2][2] = 3
    perturbed = Form(d.W_nichols.algebra, d.V_nichols.algebra, Matrix(F7, values), name="perturbed")
    assert "B.1" in check_axioms_B(perturbed, d.W_nichols.algebra, d.V_nichols.algebra).failed_axioms()


def test_cocycle_from_tau(sweedler_datum):
    d = sweedler_datum
    cocycle = sigma_from_tau(d.tau, d.K, d.H)
    assert cocycle.report.passed
    assert cocycle.carrier.dim == 4


def test_non_normalized_cocycle_is_reported(Q, z2):
    B = tensor_bialgebra(z2, z2)
    sigma = Form(B, B, Matrix(Q, [[2] * 4 for _ in range(4)]), name="sigma")
    assert "normalized_left" in check_cocycle(sigma, B).failed_axioms()


def test_twist_of_group_algebras_is_trivial(sweedler_datum):
    d = sweedler_datum
    twisted = twist_bialgebra(d.K, d.H, d.tau)
    assert twisted.report.passed
    assert twisted.bialgebra.same_structure(tensor_bialgebra(d.K, d.H))


def test_sweedler_twist(sweedler_twist):
    smash, twisted = sweedler_twist.smash, sweedler_twist.twisted
    assert smash.report.passed
    assert smash.form.rank() == 4
    assert twisted.bialgebra.dim == 16
    assert twisted.report.passed
    assert twisted.bialgebra.antipode is not None


def test_sweedler_twist_changes_the_product(sweedler_datum, sweedler_twist):
    plain = tensor_bialgebra(sweedler_datum.U.A, sweedler_datum.A.A)
    assert not sweedler_twist.twisted.bialgebra.same_structure(plain)


def test_phi_generators(sweedler_datum, sweedler_twist):
    generators = phi_generators(sweedler_datum, sweedler_twist.smash.form)
    assert generators.report.passed
    gamma, delta = generators.gammas[0], generators.deltas[0]
    assert gamma[1] == -1
    assert delta[2] == 1
    assert delta[3] == -1


def test_incompatible_phi_is_rejected(Q, make_sweedler_datum):
    datum = make_sweedler_datum(Q, phi=1)
    assert compatibility_violations(datum)
    with pytest.raises(IncompatibleDatumError) as excinfo:
        build_group_datum(datum, cap=6)
    assert excinfo.value.index == 0
    assert excinfo.value.exit_code == 1
    assert not excinfo.value.report.passed


def test_bad_s_is_rejected(Q):
    with pytest.raises(ScenarioError):
        _two_generator_datum(Q, (1, 1), (0, 3))


def test_zero_lambda_has_empty_support(Q, make_sweedler_datum):
    datum = make_sweedler_datum(Q, lam=0)
    assert compatibility_violations(datum) == []
    built = build_group_datum(datum, cap=6)
    assert built.beta.rank() == 0
    with pytest.raises(ScenarioError):
        reduce_datum(built)


def test_reduce_requires_injective_s(Q):
    built = build_group_datum(_two_generator_datum(Q, (1, 1), (0, 0)), cap=6)
    with pytest.raises(NotInjectiveOnSupportError):
        reduce_datum(built)


def test_reduce_to_nondegenerate_datum(Q):
    built = build_group_datum(_two_generator_datum(Q, (1, 0), (0, 0)), cap=6)
    reduced = reduce_datum(built)
    assert reduced.report.passed
    assert len(reduced.left_perp) == 1
    assert len(reduced.right_perp) == 0
    assert reduced.datum.beta.is_nondegenerate()
    assert reduced.F.source.dim == 32
    assert reduced.F.target.dim == 16
    assert reduced.F.matrix.rank() == 16


def test_form_shape_is_checked(Q, z2):
    with pytest.raises(ShapeError):
        Form(z2, z2, Matrix(Q, [[1, 0, 0], [0, 1, 0]]))
