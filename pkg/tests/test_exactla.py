from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vbcocycle.exactla import in_span, mat_vec, primitive, rank, rref, rref_kernel_basis, span_basis

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows).map(
            lambda rows: (rows, c)))


def test_rref_identity_and_pivots():
    m, piv = rref([[2, 4], [1, 3]], 2)
    assert m == [[1, 0], [0, 1]]
    assert piv == [0, 1]


def test_rref_keeps_fractions_exact():
    m, _ = rref([[3, 1]], 2)
    assert m[0] == [1, Fraction(1, 3)]


def test_primitive_normalizes_sign_and_content():
    assert primitive([0, Fraction(-2, 3), Fraction(4, 3)]) == (0, 1, -2)
    assert primitive([0, 0]) == (0, 0)


def test_kernel_of_zero_rows_is_standard_basis():
    basis = rref_kernel_basis([], 3)
    assert basis == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def test_in_span_dimension_mismatch():
    with pytest.raises(ValueError):
        in_span([1, 2], [[1, 2, 3]])


def test_in_span_coefficients():
    ok, coeffs = in_span([3, 5], [[1, 1], [0, 1]])
    assert ok
    assert list(coeffs) == [3, 2]
    ok, coeffs = in_span([1, 0, 0], [[0, 1, 0]])
    assert not ok and coeffs is None


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated(data):
    rows, ncols = data
    basis = rref_kernel_basis(rows, ncols)
    assert len(basis) == ncols - rank(rows, ncols)
    for vec in basis:
        assert all(x == 0 for x in mat_vec(rows, vec))
        assert all(Fraction(x).denominator == 1 for x in vec)
        assert next(x for x in vec if x != 0) > 0


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_span_basis_spans_inputs(data):
    rows, ncols = data
    basis = span_basis(rows, ncols)
    assert len(basis) == rank(rows, ncols)
    for r in rows:
        assert in_span(r, basis)[0]


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small, min_size=6, max_size=6))
def test_in_span_reconstructs(data, weights):
    rows, ncols = data
    if not rows:
        return
    combo = [sum(Fraction(w) * r[j] for w, r in zip(weights, rows)) for j in range(ncols)]
    ok, coeffs = in_span(combo, rows)
    assert ok
    rebuilt = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(ncols)]
    assert rebuilt == combo
