import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from modlie.ff_linalg import (
    FieldElement,
    Subspace,
    inverse,
    kernel,
    matmul_mod,
    rank,
    row_space,
    rref,
    solve,
    subspace_sum_and_membership,
)

P = 5


def matrices(max_rows=8, max_cols=8):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1)))


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------


def test_rref_identity():
    red, rk, piv = rref(np.eye(3, dtype=int), P)
    assert rk == 3 and piv == [0, 1, 2]
    assert np.array_equal(red, np.eye(3))


def test_rref_proportional_rows():
    # row 2 = 3 * row 1 mod 5
    red, rk, piv = rref([[2, 4], [1, 2]], P)
    assert rk == 1 and piv == [0]
    assert red.tolist() == [[1, 2], [0, 0]]


def test_rref_zero():
    _, rk, piv = rref(np.zeros((4, 2), dtype=int), P)
    assert rk == 0 and piv == []


def test_kernel_examples():
    assert kernel([[1, 1]], P).tolist() == [[4, 1]]
    assert kernel(np.eye(4, dtype=int), P).shape == (0, 4)
    assert kernel(np.zeros((2, 3), dtype=int), P).shape[0] == 3


def test_solve_identity():
    b = np.array([3, 1, 4, 0])
    assert np.array_equal(solve(np.eye(4, dtype=int), b, P), b)


def test_solve_scalar_matches_exhaustive_scan():
    scan = [x for x in range(P) if (2 * x) % P == 3]
    assert scan == [4]
    assert solve([[2]], [3], P).tolist() == scan


def test_solve_no_solution():
    assert solve([[0]], [1], P) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(np.eye(2, dtype=int), [1, 2, 3], P)


@pytest.mark.parametrize(
    "vectors, probe, expected",
    [
        ([(1, 0), (0, 1)], (3, 4), (2, True)),
        ([(1, 2)], (2, 4), (1, True)),
        ([], (1, 0), (0, False)),
    ],
)
def test_subspace_sum_and_membership(vectors, probe, expected):
    assert subspace_sum_and_membership(vectors, probe, P) == expected


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m, P) == rank(m.T, P)


@given(matrices())
def test_rref_idempotent(m):
    red, _, _ = rref(m, P)
    again, _, _ = rref(red, P)
    assert np.array_equal(red, again)


@given(matrices())
def test_rref_preserves_row_space(m):
    red, rk, _ = rref(m, P)
    both = np.vstack([m, red[:rk]])
    assert rank(both, P) == rk == rank(m, P)


@given(matrices())
def test_kernel_vectors_annihilate(m):
    ker = kernel(m, P)
    assert ker.shape[0] == m.shape[1] - rank(m, P)
    if ker.shape[0]:
        assert not matmul_mod(m, ker.T, P).any()
        assert rank(ker, P) == ker.shape[0]


@given(matrices(), st.data())
def test_solve_roundtrip(a, data):
    x = data.draw(arrays(np.int64, a.shape[1], elements=st.integers(0, P - 1)))
    b = matmul_mod(a, x, P)
    x2 = solve(a, b, P)
    assert x2 is not None
    assert np.array_equal(matmul_mod(a, x2, P), b)


@given(matrices(max_rows=40, max_cols=6))
def test_chunked_row_space_matches_rref(m):
    red, rk, piv = rref(m, P)
    chunked, piv2 = row_space(m, P, chunk=3)
    assert piv == piv2
    assert np.array_equal(red[:rk], chunked)


@given(arrays(np.int64, (4, 4), elements=st.integers(0, P - 1)))
def test_inverse(a):
    if rank(a, P) < 4:
        with pytest.raises(ZeroDivisionError):
            inverse(a, P)
    else:
        assert np.array_equal(matmul_mod(a, inverse(a, P), P), np.eye(4))


def test_subspace_equality_is_canonical():
    a = Subspace.span([[1, 2, 0], [0, 1, 1]], 3, P)
    b = Subspace.span([[1, 3, 1], [2, 4, 0]], 3, P)
    assert a == b
    assert a.contains([1, 3, 1]) and not a.contains([0, 0, 1])


# ---------------------------------------------------------------------------
# field axioms, exhaustively over GF(5)
# ---------------------------------------------------------------------------

ELEMENTS = [FieldElement(v, P) for v in range(P)]


def test_field_commutativity():
    for a, b in itertools.product(ELEMENTS, repeat=2):
        assert a + b == b + a
        assert a * b == b * a


def test_field_associativity_and_distributivity():
    for a, b, c in itertools.product(ELEMENTS, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_field_inverses():
    zero, one = FieldElement(0, P), FieldElement(1, P)
    for a in ELEMENTS:
        assert a + (-a) == zero
        assert a - a == zero
        if a.value:
            assert a * a.inverse() == one
            assert one / a == a.inverse()
    with pytest.raises(ZeroDivisionError):
        zero.inverse()


def test_field_mismatch():
    with pytest.raises(ValueError):
        FieldElement(1, 5) + FieldElement(1, 7)
