"""
Tests for exact field arithmetic and linear algebra
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from app.core.exceptions import FieldMismatchError, NoSuchRootError, ShapeError, SingularMatrixError
from app.services.exactla import (
    Field,
    FieldKind,
    Matrix,
    TensorIndex,
    kernel_basis,
    multiplicative_order,
    primitive_root_of_unity,
    solve_linear_system,
    span_basis,
    tensor_of_maps,
)

F7 = Field.prime(7)
Q = Field.rationals()

small_ints = st.integers(min_value=-50, max_value=50)


def test_field_construction():
    assert Field.prime(7).name == "F_7"
    assert Field.rationals().name == "Q"
    assert Field.prime(7).characteristic == 7
    with pytest.raises(ValueError):
        Field.prime(4)
    with pytest.raises(ValueError):
        Field(FieldKind.RATIONALS, 3)


def test_scalar_text_round_trip():
    assert Q.parse("3/4") == Fraction(3, 4)
    assert Q.format(Fraction(2)) == "2/1"
    assert Q.format(Fraction(-1, 3)) == "-1/3"
    assert F7.parse("10") == 3
    assert F7.parse("1/2") == 4
    assert F7.format(-1) == "6"


def test_inverse_and_power():
    assert F7.inv(3) == 5
    assert F7.power(4, -1) == 2
    assert Q.power(Fraction(2), -2) == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


@given(a=small_ints, b=small_ints, c=small_ints)
@settings(max_examples=100)
def test_prime_field_axioms(a, b, c):
    x, y, z = F7(a), F7(b), F7(c)
    assert F7.reduce(x * (y + z)) == F7.reduce(x * y + x * z)
    assert F7.reduce(x * y) == F7(a * b)
    if not F7.is_zero(x):
        assert F7.reduce(x * F7.inv(x)) == 1


@given(a=small_ints, b=st.integers(min_value=1, max_value=20))
@settings(max_examples=100)
def test_rational_parse_format_inverse(a, b):
    value = Fraction(a, b)
    assert Q.parse(Q.format(value)) == value


def test_roots_of_unity():
    assert primitive_root_of_unity(3, F7) == 2
    assert primitive_root_of_unity(2, Q) == -1
    assert multiplicative_order(2, F7) == 3
    assert multiplicative_order(6, F7) == 2
    assert multiplicative_order(Fraction(2), Q) == 0
    with pytest.raises(NoSuchRootError):
        primitive_root_of_unity(3, Q)
    with pytest.raises(NoSuchRootError):
        primitive_root_of_unity(4, F7)


@given(factors=st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=4), data=st.data())
@settings(max_examples=50)
def test_tensor_index_flatten_inverts_unflatten(factors, data):
    index = TensorIndex(tuple(factors))
    flat = data.draw(st.integers(min_value=0, max_value=index.size - 1))
    assert index.flatten(index.unflatten(flat)) == flat


def test_tensor_index_is_row_major():
    index = TensorIndex((2, 3))
    assert list(index)[4] == (1, 1)
    assert index.flatten((1, 1)) == 4
    with pytest.raises(ShapeError):
        index.unflatten(6)


def test_matrix_entries_are_canonical():
    m = Matrix(F7, [[8, -1]])
    assert list(m.entries[0]) == [1, 6]
    with pytest.raises(ShapeError):
        Matrix(Q, [1, 2, 3])


def test_inverse_and_singular():
    m = Matrix(Q, [[1, 2], [3, 4]])
    assert (m @ m.inverse()).is_identity()
    with pytest.raises(SingularMatrixError):
        Matrix(Q, [[1, 2], [2, 4]]).inverse()


def test_kernel_basis_is_reduced():
    basis = kernel_basis(Matrix(Q, [[1, 1]]))
    assert len(basis) == 1
    assert list(basis[0]) == [1, -1]
    assert kernel_basis(Matrix.identity(Q, 3)) == []


def test_span_basis_collapses_dependent_vectors():
    vectors = [Q.vector([1, 1, 0]), Q.vector([2, 2, 0]), Q.vector([0, 1, 1])]
    assert span_basis(Q, vectors, 3).rows == 2


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Matrix.identity(Q, 2) @ Matrix.identity(F7, 2)


def test_solve_linear_system():
    solution = solve_linear_system(Q, [{0: 1, 1: 1}, {0: 1, 1: -1}], [2, 0], 2)
    assert solution == [1, 1]
    assert solve_linear_system(Q, [{0: 1}, {0: 2}], [1, 3], 1) is None


matrices = st.integers(min_value=1, max_value=3).flatmap(
    lambda rows: st.integers(min_value=1, max_value=3).flatmap(
        lambda cols: st.lists(st.lists(st.integers(min_value=0, max_value=6), min_size=cols, max_size=cols),
                              min_size=rows, max_size=rows)))


@given(a=matrices, b=matrices)
@settings(max_examples=40, deadline=None)
def test_rank_of_tensor_product_is_multiplicative(a, b):
    left, right = Matrix(F7, a), Matrix(F7, b)
    assert tensor_of_maps(left, right).rank() == left.rank() * right.rank()


@given(a=matrices)
@settings(max_examples=40, deadline=None)
def test_rank_nullity(a):
    m = Matrix(F7, a)
    assert m.rank() + len(kernel_basis(m)) == m.cols
