import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from cm_bethe.errors import InputError, RankError
from cm_bethe.linalg import (
    adjugate,
    adjugate_faddeev_leverrier,
    extract_rank_one_witness,
)

from conftest import random_complex


def cofactor_adjugate(M):
    """Textbook adjugate: transposed matrix of signed minors."""
    n = M.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    C = np.empty_like(M, dtype=complex)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(M, i, axis=0), j, axis=1)
            C[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return C.T


@pytest.mark.parametrize("method", ["svd", "faddeev-leverrier"])
def test_adjugate_examples(method):
    np.testing.assert_allclose(adjugate(np.eye(3), method), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(
        adjugate([[0, 1], [0, 0]], method), [[0, -1], [0, 0]], atol=1e-15
    )
    np.testing.assert_allclose(adjugate([[5.0]], method), [[1.0]])


@pytest.mark.parametrize("method", ["svd", "faddeev-leverrier"])
def test_adjugate_invertible_matches_det_times_inverse(rng, method):
    M = random_complex(rng, 4, 4)
    expected = np.linalg.det(M) * np.linalg.inv(M)
    np.testing.assert_allclose(adjugate(M, method), expected, rtol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_adjugate_of_singular_matches_cofactors(rng, n):
    # rank n-1: adjugate is rank one and non-zero
    M = random_complex(rng, n, n - 1) @ random_complex(rng, n - 1, n)
    A = adjugate(M)
    np.testing.assert_allclose(A, cofactor_adjugate(M), atol=1e-10 * np.abs(A).max())
    s = np.linalg.svd(A, compute_uv=False)
    assert s[1] <= 1e-12 * s[0]


def test_faddeev_leverrier_agrees_with_svd_route(rng):
    for n in range(1, 9):
        M = random_complex(rng, n, n)
        a, b = adjugate(M, "faddeev-leverrier"), adjugate(M, "svd")
        assert np.linalg.norm(a - b) <= 1e-11 * np.linalg.norm(b)


def test_adjugate_rejects_bad_input():
    with pytest.raises(InputError):
        adjugate(np.zeros((2, 3)))
    with pytest.raises(InputError):
        adjugate([[np.nan, 0], [0, 1]])
    with pytest.raises(InputError):
        adjugate(np.eye(2), method="laplace")


complex_matrices = st.integers(1, 8).flatmap(
    lambda n: st.tuples(
        arrays(np.float64, (n, n), elements=st.floats(-10, 10)),
        arrays(np.float64, (n, n), elements=st.floats(-10, 10)),
    )
).map(lambda t: t[0] + 1j * t[1])


@settings(max_examples=200, deadline=None)
@given(complex_matrices)
def test_adjugate_times_matrix_is_det_identity(M):
    n = M.shape[0]
    A = adjugate(M)
    d = np.linalg.det(M)
    scale = max(np.linalg.norm(M, 2) ** n, 1e-300)
    for prod in (M @ A, A @ M):
        assert np.linalg.norm(prod - d * np.eye(n)) <= 1e-10 * scale


def test_rank_one_perturbation_determinant(rng):
    for _ in range(100):
        n = int(rng.integers(1, 9))
        M = random_complex(rng, n, n)
        e, f = random_complex(rng, n), random_complex(rng, n)
        lhs = np.linalg.det(M + np.outer(e, f))
        rhs = np.linalg.det(M) + f @ adjugate(M) @ e
        assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs))


def test_witness_examples():
    w = extract_rank_one_witness([[2, 0], [0, 0]])
    np.testing.assert_allclose(w.left, [2, 0], atol=1e-15)
    np.testing.assert_allclose(w.right, [1, 0], atol=1e-15)

    n = 4
    w = extract_rank_one_witness(np.ones((n, n)))
    np.testing.assert_allclose(w.matrix, np.ones((n, n)), atol=1e-14)
    np.testing.assert_allclose(w.right, np.full(n, 1 / np.sqrt(n)), atol=1e-14)
    np.testing.assert_allclose(w.left, np.full(n, np.sqrt(n)), atol=1e-14)


def test_witness_gauge_and_reconstruction(rng):
    for _ in range(50):
        n = int(rng.integers(1, 9))
        R = np.outer(random_complex(rng, n), random_complex(rng, n))
        w = extract_rank_one_witness(R)
        assert np.linalg.norm(w.matrix - R) <= 1e-10 * np.linalg.norm(R)
        k = np.argmax(np.abs(w.right))
        assert abs(w.right[k].imag) <= 1e-15 and w.right[k].real > 0
        # the gauge is canonical: a rescaled input factor gives the same witness
        w2 = extract_rank_one_witness(np.outer(3j * w.left, w.right / 3j))
        np.testing.assert_allclose(w2.left, w.left, atol=1e-12 * np.abs(w.left).max())


def test_witness_errors():
    with pytest.raises(RankError, match="rank 0"):
        extract_rank_one_witness(np.zeros((3, 3)))
    with pytest.raises(RankError, match="not rank one") as info:
        extract_rank_one_witness(np.eye(2))
    np.testing.assert_allclose(info.value.singular_values, [1, 1])
