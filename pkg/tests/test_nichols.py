"""
Tests for truncated Nichols algebras, lifted maps and lifted pairings
"""

import pytest

from app.core.exceptions import DimensionBlowupError, DoesNotDescendError, ScenarioError
from app.services.exactla import Matrix
from app.services.forms import form_from_function
from app.services.hopfcore import group_algebra
from app.services.nichols import (
    TensorAlgebra,
    brute_force_symmetrizer,
    check_poincare_symmetry,
    check_primitives,
    diagonal_yd,
    hilbert_series,
    lift_map,
    lift_pairing,
    nichols_truncate,
    primitives,
    quantum_symmetrizer,
    top_degree,
    total_dimension,
    underline_op_nichols,
)
from app.services.ydcat import YDMorphism


@pytest.fixture(scope="module")
def qplane(Q):
    H = group_algebra([2, 2], Q)
    return diagonal_yd(H, [(1, 0), (0, 1)], [(-1, 1), (1, -1)], ["x1", "x2"])


@pytest.fixture(scope="module")
def qplane_nichols(qplane):
    return nichols_truncate(qplane.module, 6)


def test_sweedler_hilbert_series(sweedler_nichols):
    assert hilbert_series(sweedler_nichols) == [1, 1, 0, 0, 0, 0, 0]
    assert total_dimension(sweedler_nichols) == 2
    assert top_degree(sweedler_nichols) == 1
    assert sweedler_nichols.complete


def test_taft_hilbert_series(taft_nichols):
    assert hilbert_series(taft_nichols) == [1, 1, 1, 0, 0, 0, 0]
    assert total_dimension(taft_nichols) == 3
    assert taft_nichols.algebra.labels == ("1", "x", "x^2")


def test_qplane_hilbert_series(qplane_nichols):
    assert hilbert_series(qplane_nichols, length=4) == [1, 2, 1, 0]
    assert total_dimension(qplane_nichols) == 4


def test_symmetrizer_recursion_matches_brute_force(qplane, taft_V):
    for V in (qplane, taft_V):
        T = TensorAlgebra(V.module)
        for d in range(2, 5):
            if T.n ** d > 64:
                break
            assert T.symmetrizer(d) == brute_force_symmetrizer(T, d)


def test_sweedler_symmetrizer_vanishes_in_degree_two(sweedler_V):
    assert quantum_symmetrizer(sweedler_V.module, 2).is_zero()


def test_primitives_and_poincare_symmetry(sweedler_nichols, taft_nichols, qplane_nichols):
    for N in (sweedler_nichols, taft_nichols, qplane_nichols):
        assert check_primitives(N).passed
        assert check_poincare_symmetry(N).passed
    assert len(primitives(qplane_nichols, 1)) == 2
    assert primitives(qplane_nichols, 2) == []


def test_incomplete_truncation(Q, z2):
    V = diagonal_yd(z2, [(1,)], [(1,)], ["x"])
    N = nichols_truncate(V.module, 3)
    assert not N.complete
    assert list(N.dims) == [1, 1, 1, 1]
    assert N.algebra.truncated_at == 3
    assert top_degree(N) is None


def test_dimension_bound(qplane):
    with pytest.raises(DimensionBlowupError):
        nichols_truncate(qplane.module, 3, dim_bound=4)


def test_cap_must_be_positive(sweedler_V):
    with pytest.raises(ScenarioError):
        nichols_truncate(sweedler_V.module, 0)


def test_non_coideal_quotient_is_rejected(qplane):
    def kill_one_word(T, d):
        if d != 2:
            return T.symmetrizer(d)
        return Matrix(T.field, [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])

    with pytest.raises(DoesNotDescendError):
        nichols_truncate(qplane.module, 3, symmetrizer=kill_one_word)


def test_lift_identity_map(Q, qplane, qplane_nichols):
    lifted = lift_map(YDMorphism(qplane.module, qplane.module, Matrix.identity(Q, 2)),
                      qplane_nichols, qplane_nichols)
    assert lifted.report.passed
    assert lifted.matrix.is_identity()


def test_lift_sweedler_pairing(Q, sweedler_V, sweedler_nichols):
    beta = form_from_function(sweedler_V.module, sweedler_V.module, lambda i, j: Q.one, name="beta")
    lifted = lift_pairing(beta, sweedler_nichols, sweedler_nichols)
    assert lifted.report.passed
    assert lifted.form.matrix.is_identity()


def test_lift_taft_pairing_is_nondegenerate(F7, z3_f7, taft_V, taft_nichols):
    # u in degree z with z·u = 4u, the inverse of the character of x
    W = diagonal_yd(z3_f7, [(1,)], [(4,)], ["u"])
    W_nichols = nichols_truncate(W.module, 6)
    beta = form_from_function(W.module, taft_V.module, lambda i, j: F7.one, name="beta")
    lifted = lift_pairing(beta, W_nichols, taft_nichols)
    assert lifted.report.passed
    assert "nondegenerate" in lifted.report.checked
    assert lifted.form.rank() == 3
    # (1 + q)·q² with q = 2
    assert lifted.blocks[2].to_strings() == [["5"]]


def test_lift_pairing_with_equal_braidings_fails_the_expansion(F7, taft_V, taft_nichols):
    beta = form_from_function(taft_V.module, taft_V.module, lambda i, j: F7.one, name="beta")
    lifted = lift_pairing(beta, taft_nichols, taft_nichols)
    assert lifted.blocks[2].to_strings() == [["5"]]
    assert lifted.report.failed_axioms() == ["coproduct_expansion"]
    assert lifted.report.failures[0].indices == [2]


def test_op_nichols(sweedler_nichols, qplane_nichols):
    for N in (sweedler_nichols, qplane_nichols):
        result = underline_op_nichols(N)
        assert result.report.passed
        assert result.truncation.dims == N.dims
