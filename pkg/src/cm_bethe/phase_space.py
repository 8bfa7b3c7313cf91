"""Pairs (X, Z) with rank([X, Z] + I) = 1 and the data they carry.

Pairs are validated when built; every function taking a :class:`CMPair`
assumes the commutator defect is within tolerance.
"""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    ConsistencyError,
    InputError,
    PairRejected,
    SingularityError,
    SpectralCollisionError,
    VanishingAdjugateError,
)
from .linalg import (
    RankOneWitness,
    adjugate,
    as_complex_matrix,
    extract_rank_one_witness,
)

RANK_ONE_TOL = 1e-10
SINGULAR_TOL = 1e-9
SPECTRAL_TOL = 1e-8

__all__ = [
    "CMPair",
    "Conjugate",
    "RANK_ONE_TOL",
    "RationalFunction",
    "SINGULAR_TOL",
    "ScalarData",
    "TranslateX",
    "TranslateZ",
    "SwapTranspose",
    "Transpose",
    "ValidationReport",
    "adjugate_witness",
    "apply_symmetry",
    "check_commutator",
    "cm_pair_from_positions",
    "commutator_witness",
    "evaluate_pq",
    "is_singular",
    "paper_2x2_pair",
    "random_cauchy_pair",
    "scalar_data",
    "validate_pair",
]


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of testing rank([X, Z] + I) = 1."""

    accepted: bool
    status: str  # "accepted" | "rank-zero" | "not-rank-one"
    singular_values: np.ndarray
    defect: float
    tol: float


@dataclass(frozen=True, eq=False)
class CMPair:
    """A validated point of the completed Calogero-Moser phase space.

    Build through :func:`validate_pair` (or a constructor that calls it);
    the dataclass itself does not re-check its fields.
    """

    X: np.ndarray
    Z: np.ndarray
    defect: float
    singular_values: np.ndarray = field(repr=False)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def commutator(self):
        """``[X, Z] + I``."""
        return self.X @ self.Z - self.Z @ self.X + np.eye(self.n)


def check_commutator(X, Z, tol=RANK_ONE_TOL):
    """Singular-value test of ``R = XZ - ZX + I`` without raising.

    Accepts iff ``s2 <= tol * max(s1, 1)``; ``R`` numerically zero gets
    status ``"rank-zero"``.  ``defect = s2 / max(s1, 1)``.
    """
    X = as_complex_matrix(X, "X")
    Z = as_complex_matrix(Z, "Z")
    if X.shape != Z.shape:
        raise InputError(f"X and Z differ in shape: {X.shape} vs {Z.shape}")
    n = X.shape[0]
    R = X @ Z - Z @ X + np.eye(n)
    s = np.linalg.svd(R, compute_uv=False)
    s2 = s[1] if n > 1 else 0.0
    defect = float(s2 / max(s[0], 1.0))
    if s[0] <= tol:
        return ValidationReport(False, "rank-zero", s, defect, tol)
    if defect <= tol:
        return ValidationReport(True, "accepted", s, defect, tol)
    return ValidationReport(False, "not-rank-one", s, defect, tol)


def validate_pair(X, Z, tol=RANK_ONE_TOL):
    """Return a :class:`CMPair` or raise :class:`PairRejected`."""
    report = check_commutator(X, Z, tol)
    if not report.accepted:
        raise PairRejected(report)
    return CMPair(
        np.array(X, dtype=complex),
        np.array(Z, dtype=complex),
        report.defect,
        report.singular_values,
    )


def paper_2x2_pair():
    """The nilpotent pair X = [[0, 1], [0, 0]], Z = [[0, 0], [1, 0]]."""
    return validate_pair([[0, 1], [0, 0]], [[0, 0], [1, 0]])


def cm_pair_from_positions(x, p, sep_tol=1e-12, tol=RANK_ONE_TOL):
    """Calogero-Moser pair with particle positions `x` and momenta `p`.

    ``X = diag(x)``; ``Z`` has diagonal `p` and ``Z[j, k] = 1 / (x_j - x_k)``
    off the diagonal, so ``[X, Z] + I`` is the all-ones matrix.
    """
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    p = np.atleast_1d(np.asarray(p, dtype=complex))
    if x.ndim != 1 or x.shape != p.shape or x.size == 0:
        raise InputError("positions and momenta must be 1-d of equal, non-zero length")
    diff = x[:, None] - x[None, :]
    n = x.size
    off = ~np.eye(n, dtype=bool)
    if n > 1 and np.abs(diff[off]).min() <= sep_tol:
        raise InputError("positions are not pairwise distinct")
    Z = np.zeros((n, n), dtype=complex)
    Z[off] = 1.0 / diff[off]
    Z[np.diag_indices(n)] = p
    return validate_pair(np.diag(x), Z, tol)


def random_cauchy_pair(rng, n, min_sep=1e-2):
    """Cauchy pair with positions uniform in the unit disk, momenta complex normal.

    Positions are rejection-sampled until pairwise separation is at least
    `min_sep`.  `rng` is a ``numpy.random.Generator``.
    """
    while True:
        r = np.sqrt(rng.uniform(0, 1, n))
        theta = rng.uniform(0, 2 * np.pi, n)
        x = r * np.exp(1j * theta)
        d = np.abs(x[:, None] - x[None, :]) + np.eye(n) * 10
        if n == 1 or d.min() >= min_sep:
            break
    p = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)
    return cm_pair_from_positions(x, p)


# -- singular X and scalar data ----------------------------------------------


def is_singular(X, tol=SINGULAR_TOL, scale=0.0):
    """True when ``s_min(X) <= tol * max(s_max(X), scale)``.

    `scale` lets a caller supply the magnitude of the terms X was summed
    from, which matters when X is 1x1 or cancels to nearly zero.
    """
    s = np.linalg.svd(np.asarray(X, dtype=complex), compute_uv=False)
    return bool(s[-1] <= tol * max(s[0], scale))


def adjugate_witness(X, tol=SINGULAR_TOL, scale=0.0):
    """Factor ``adj(X) = outer(v, w)`` for numerically singular X.

    Raises :class:`SingularityError` if X is not singular (see
    :func:`is_singular` for `scale`) and :class:`VanishingAdjugateError` if
    rank X <= n - 2 (adj(X) ~ 0).
    """
    X = as_complex_matrix(X, "X")
    n = X.shape[0]
    s = np.linalg.svd(X, compute_uv=False)
    ref = max(s[0], scale)
    if not s[-1] <= tol * ref:
        raise SingularityError(
            f"X is not singular: s_min = {s[-1]:.3e} > {tol:.1e} * {ref:.3e}"
        )
    if n > 1 and s[-2] <= tol * ref:
        raise VanishingAdjugateError(
            f"adj(X) vanishes: rank X <= n-2 (singular values {np.array2string(s, precision=3)})"
        )
    return extract_rank_one_witness(adjugate(X), tol)


def commutator_witness(pair, tol=RANK_ONE_TOL):
    """Factor ``[X, Z] + I = outer(e, f)``."""
    return extract_rank_one_witness(pair.commutator, tol)


@dataclass(frozen=True)
class ScalarData:
    """gamma = w.e and mu = f.v, with the witnesses (e, f) and (v, w)."""

    gamma: complex
    mu: complex
    ef: RankOneWitness
    vw: RankOneWitness

    @property
    def e(self):
        return self.ef.left

    @property
    def f(self):
        return self.ef.right

    @property
    def v(self):
        return self.vw.left

    @property
    def w(self):
        return self.vw.right

    @classmethod
    def from_witnesses(cls, ef, vw):
        return cls(complex(vw.right @ ef.left), complex(ef.right @ vw.left), ef, vw)

    @property
    def scale(self):
        """Cauchy-Schwarz bound on ``|gamma mu|``."""
        return float(
            np.linalg.norm(self.e) * np.linalg.norm(self.f)
            * np.linalg.norm(self.v) * np.linalg.norm(self.w)
        )


def scalar_data(pair, rank_tol=RANK_ONE_TOL, singular_tol=SINGULAR_TOL, scale=0.0):
    """Witnesses and constants gamma, mu for a pair with singular X."""
    return ScalarData.from_witnesses(
        commutator_witness(pair, rank_tol), adjugate_witness(pair.X, singular_tol, scale)
    )


def evaluate_pq(pair, lam, scalars=None):
    """``p(lam) = f . adj(lam I - Z) . v`` and ``q(lam) = w . adj(lam I - Z) . e``.

    Returns ``(p, q, scalars)``.  Pass precomputed `scalars` to reuse (and
    fix the gauge of) the witnesses.
    """
    if scalars is None:
        scalars = scalar_data(pair)
    A = adjugate(lam * np.eye(pair.n) - pair.Z)
    p = complex(scalars.f @ A @ scalars.v)
    q = complex(scalars.w @ A @ scalars.e)
    return p, q, scalars


# -- symmetries ---------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """``f(t) = sum_k poly[k] t^k + sum residue / (pole - t)``."""

    poly: Sequence[complex] = ()
    poles: Sequence[tuple] = ()  # (pole, residue) pairs

    def of_matrix(self, M, spectral_tol=SPECTRAL_TOL):
        """Evaluate at a square matrix; poles must avoid spec(M)."""
        M = np.asarray(M, dtype=complex)
        n = M.shape[0]
        eye = np.eye(n, dtype=complex)
        out = np.zeros((n, n), dtype=complex)
        power = eye
        for c in self.poly:
            out += c * power
            power = power @ M
        if self.poles:
            spec = np.linalg.eigvals(M)
            scale = max(1.0, float(np.linalg.norm(M, 2)))
            for pole, residue in self.poles:
                gap = np.abs(spec - pole).min()
                if gap <= spectral_tol * scale:
                    raise SpectralCollisionError(
                        f"pole {pole} lies within {gap:.3e} of the spectrum"
                    )
                out += residue * np.linalg.solve(pole * eye - M, eye)
        return out


@dataclass(frozen=True)
class TranslateX:
    """``X -> X + f(Z)``."""

    f: RationalFunction


@dataclass(frozen=True)
class TranslateZ:
    """``Z -> Z + f(X)``."""

    f: RationalFunction


@dataclass(frozen=True)
class Transpose:
    """The involution ``(X, Z) -> (X^T, Z^T)``.

    Leaves tau unchanged, but ``[X^T, Z^T] + I = 2I - ([X, Z] + I)^T`` is rank
    one only in special cases (n <= 2, or a commutator with eigenvalue 2
    repeated n - 1 times), so on generic pairs with n >= 3 the image is not a
    valid pair and :func:`apply_symmetry` raises.
    """


@dataclass(frozen=True)
class SwapTranspose:
    """``(X, Z) -> (Z^T, X^T)``; always maps valid pairs to valid pairs."""


@dataclass(frozen=True)
class Conjugate:
    """``(X, Z) -> (g X g^-1, g Z g^-1)``."""

    g: np.ndarray


def apply_symmetry(pair, op, tol=RANK_ONE_TOL):
    """Act on `pair` by `op` and re-validate the result.

    Raises :class:`SpectralCollisionError` for a pole on the relevant
    spectrum and :class:`ConsistencyError` if the image fails validation
    (rounding breakdown, or :class:`Transpose` on a generic pair, n >= 3).
    """
    X, Z = pair.X, pair.Z
    if isinstance(op, TranslateX):
        X, Z = X + op.f.of_matrix(Z), Z
    elif isinstance(op, TranslateZ):
        X, Z = X, Z + op.f.of_matrix(X)
    elif isinstance(op, Transpose):
        X, Z = X.T.copy(), Z.T.copy()
    elif isinstance(op, SwapTranspose):
        X, Z = Z.T.copy(), X.T.copy()
    elif isinstance(op, Conjugate):
        g = as_complex_matrix(op.g, "g")
        if g.shape != X.shape:
            raise InputError("conjugating matrix has the wrong shape")
        s = np.linalg.svd(g, compute_uv=False)
        if s[-1] <= 1e-12 * s[0]:
            raise InputError("conjugating matrix is not invertible")
        X = g @ np.linalg.solve(g.T, X.T).T
        Z = g @ np.linalg.solve(g.T, Z.T).T
    else:
        raise InputError(f"unknown symmetry {op!r}")
    try:
        return validate_pair(X, Z, tol)
    except PairRejected as exc:
        raise ConsistencyError(f"symmetry {type(op).__name__} broke the pair: {exc}") from exc

