"""Dense complex linear algebra: adjugates and rank-one factorizations.

Everything here works on plain ``numpy`` arrays of dtype ``complex128``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError, RankError

__all__ = [
    "RankOneWitness",
    "adjugate",
    "adjugate_faddeev_leverrier",
    "adjugate_svd",
    "as_complex_matrix",
    "det_scale",
    "extract_rank_one_witness",
    "resolvent",
]


def as_complex_matrix(M, name="matrix"):
    """Return `M` as a square, finite complex128 array (a copy)."""
    A = np.array(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InputError(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError(f"{name} has non-finite entries")
    return A


def adjugate_svd(M):
    """Adjugate through the singular value decomposition.

    With ``M = U diag(s) V^H`` the adjugate is
    ``det(U) det(V^H) V diag(prod_{j != i} s_j) U^H``, which stays accurate
    when `M` is singular or nearly so.
    """
    A = as_complex_matrix(M)
    n = A.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    U, s, Vh = np.linalg.svd(A)
    # products of all singular values but one, without dividing by s_i
    prefix = np.concatenate(([1.0], np.cumprod(s[:-1])))
    suffix = np.concatenate((np.cumprod(s[::-1][:-1])[::-1], [1.0]))
    cof = prefix * suffix
    phase = np.linalg.det(U) * np.linalg.det(Vh)
    return phase * (Vh.conj().T * cof) @ U.conj().T


def adjugate_faddeev_leverrier(M):
    """Adjugate from the Faddeev-LeVerrier characteristic polynomial recursion.

    Runs ``B_k = A B_{k-1} + c_{n-k+1} I``, ``c_{n-k} = -tr(A B_k) / k`` and
    returns ``(-1)^(n-1) B_n``.  The input is scaled to unit max-entry first.
    Valid for singular matrices, but loses accuracy as ``n`` and the
    condition number grow.
    """
    A = as_complex_matrix(M)
    n = A.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    scale = np.abs(A).max()
    if scale == 0.0:
        return np.zeros_like(A)
    A = A / scale
    eye = np.eye(n, dtype=complex)
    B = eye.copy()
    for k in range(2, n + 1):
        c = -np.trace(A @ B) / (k - 1)
        B = A @ B + c * eye
    return (-1) ** (n - 1) * scale ** (n - 1) * B


def adjugate(M, method="svd"):
    """Matrix of cofactors of `M`, so that ``M @ adj(M) = det(M) I``.

    Parameters
    ----------
    M : array_like, shape (n, n)
    method : {"svd", "faddeev-leverrier"}
        ``"svd"`` (default) is backward stable for singular input.
        ``"faddeev-leverrier"`` is the trace recursion, kept as an
        independent cross-check.

    For ``n == 1`` the result is ``[[1]]``.
    """
    if method == "svd":
        return adjugate_svd(M)
    if method == "faddeev-leverrier":
        return adjugate_faddeev_leverrier(M)
    raise InputError(f"unknown adjugate method {method!r}")


def resolvent(lam, M):
    """``(lam I - M)^{-1}`` by a linear solve."""
    A = as_complex_matrix(M)
    n = A.shape[0]
    eye = np.eye(n, dtype=complex)
    return np.linalg.solve(lam * eye - A, eye)


def det_scale(M):
    """Hadamard bound ``prod_i ||row_i||``, an upper bound for ``|det M|``.

    Used as the natural magnitude against which a determinant is called
    numerically zero.
    """
    A = np.asarray(M, dtype=complex)
    return float(np.prod(np.linalg.norm(A, axis=1)))


@dataclass(frozen=True)
class RankOneWitness:
    """Vectors with ``outer(left, right)`` equal to a rank-one matrix."""

    left: np.ndarray
    right: np.ndarray

    @property
    def matrix(self):
        return np.outer(self.left, self.right)

    def rescaled(self, c):
        """Same outer product, gauge changed by ``left * c``, ``right / c``."""
        return RankOneWitness(self.left * c, self.right / c)


def extract_rank_one_witness(R, tol=1e-10):
    """Factor a numerically rank-one matrix as ``left @ right.T``.

    The gauge is fixed from the dominant singular triple ``R ~ s1 u1 v1^H``:
    ``left = s1 u1``, ``right = conj(v1)``, then both are rephased so the
    largest-magnitude entry of ``right`` is real and positive.

    Raises
    ------
    RankError
        If ``R`` is numerically zero, or the relative Frobenius error of the
        rank-one reconstruction exceeds `tol`.
    """
    A = as_complex_matrix(R)
    U, s, Vh = np.linalg.svd(A)
    fro = float(np.sqrt(np.sum(s**2)))
    if s[0] == 0.0 or s[0] <= np.finfo(float).tiny:
        raise RankError("matrix is zero (rank 0), not rank one", s)
    tail = float(np.sqrt(np.sum(s[1:] ** 2)))
    if tail > tol * fro:
        raise RankError(
            f"matrix is not rank one: relative tail {tail / fro:.3e} > tol {tol:.1e}; "
            f"singular values {np.array2string(s, precision=3)}",
            s,
        )
    left = s[0] * U[:, 0]
    right = Vh[0, :].copy()
    k = int(np.argmax(np.abs(right)))
    phase = right[k] / abs(right[k])
    return RankOneWitness(left * phase, right / phase)
