"""Tau function of a pair in Miwa variables and its two-variable sections.

For a pair (X, Z) the tau function is

    tau(l, lam) = det(X + sum_i l_i (lam_i I - Z)^{-1}).

Fixing a lattice spacing ``eta`` and two poles ``lambda1``, ``lambda2`` gives
the section ``tau^m(x)`` with ``x = eta * l_1`` and ``m = l_2``, a
polynomial of degree n in x whose roots are the eigenvalues of the flow
matrix (see :mod:`cm_bethe.flow`).
"""

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConditioningError, InputError, SpectralCollisionError
from .linalg import det_scale
from .phase_space import SPECTRAL_TOL

__all__ = [
    "LatticeSection",
    "MiwaPoint",
    "TauPolynomial",
    "TauSection",
    "TwoByTwoComparison",
    "closed_form_2x2",
    "compare_closed_form_2x2",
    "polish_roots",
    "random_section",
    "tau_miwa",
    "tau_polynomial",
    "tau_roots",
    "tau_section",
]

INTERP_TOL = 1e-8
LEADING_TOL = 1e-8


def _check_off_spectrum(Z, lam, tol, label):
    spec = np.linalg.eigvals(Z)
    scale = max(1.0, float(np.linalg.norm(Z, 2)))
    gap = float(np.abs(spec - lam).min())
    if gap <= tol * scale:
        raise SpectralCollisionError(
            f"{label} = {lam} is within {gap:.3e} of an eigenvalue of Z"
        )


@dataclass(frozen=True)
class MiwaPoint:
    """Finitely many Miwa weights ``l_i`` attached to poles ``lam_i``."""

    terms: Sequence[tuple] = ()  # (weight, pole)


def tau_miwa(pair, point, spectral_tol=SPECTRAL_TOL):
    """``det(X + sum l_i (lam_i I - Z)^{-1})``, resolvents by linear solves."""
    n = pair.n
    eye = np.eye(n, dtype=complex)
    M = pair.X.copy()
    for i, (weight, pole) in enumerate(point.terms):
        if weight == 0:
            continue
        _check_off_spectrum(pair.Z, pole, spectral_tol, f"pole of term {i}")
        M = M + weight * np.linalg.solve(pole * eye - pair.Z, eye)
    return complex(np.linalg.det(M))


@dataclass(frozen=True)
class LatticeSection:
    """Lattice spacing and the two poles selecting the (x, m) slice."""

    eta: complex
    lambda1: complex
    lambda2: complex

    def __post_init__(self):
        for name in ("eta", "lambda1", "lambda2"):
            value = complex(getattr(self, name))
            if not cmath.isfinite(value):
                raise InputError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.eta == 0:
            raise InputError("lattice spacing eta must be non-zero")

    @property
    def resonant(self):
        """True when lambda1 == lambda2 (to rounding)."""
        scale = max(1.0, abs(self.lambda1), abs(self.lambda2))
        return abs(self.lambda1 - self.lambda2) <= 1e-12 * scale

    def check(self, pair, spectral_tol=SPECTRAL_TOL):
        """Raise :class:`SpectralCollisionError` if a pole hits spec(Z)."""
        _check_off_spectrum(pair.Z, self.lambda1, spectral_tol, "lambda1")
        _check_off_spectrum(pair.Z, self.lambda2, spectral_tol, "lambda2")


class TauSection:
    """``tau^m(x)`` for one pair and section, with the resolvents cached."""

    def __init__(self, pair, section, spectral_tol=SPECTRAL_TOL):
        section.check(pair, spectral_tol)
        self.pair = pair
        self.section = section
        eye = np.eye(pair.n, dtype=complex)
        self.R1 = np.linalg.solve(section.lambda1 * eye - pair.Z, eye)
        self.R2 = np.linalg.solve(section.lambda2 * eye - pair.Z, eye)

    def matrix(self, m, x):
        """``X + (x / eta) R1 + m R2``."""
        return self.pair.X + (x / self.section.eta) * self.R1 + m * self.R2

    def __call__(self, m, x):
        return complex(np.linalg.det(self.matrix(m, x)))

    def value_and_scale(self, m, x):
        """Value together with the Hadamard bound of its matrix."""
        M = self.matrix(m, x)
        return complex(np.linalg.det(M)), det_scale(M)

    def leading_coefficient(self):
        """``eta^-n / det(lambda1 I - Z)``, the x^n coefficient for every m."""
        n = self.pair.n
        return complex(np.linalg.det(self.R1)) / self.section.eta**n


def random_section(rng, pair, eta=None, lambda1=None, lambda2=None):
    """Draw the missing section parameters, rejecting poles on spec(Z).

    ``eta`` gets modulus uniform in [0.5, 1.5] and a uniform phase; the
    poles are complex normal with standard deviation 2 per component.
    """
    for _ in range(1000):
        e = eta if eta is not None else rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        l1 = lambda1 if lambda1 is not None else complex(*(2 * rng.standard_normal(2)))
        l2 = lambda2 if lambda2 is not None else complex(*(2 * rng.standard_normal(2)))
        section = LatticeSection(e, l1, l2)
        try:
            section.check(pair)
            return section
        except SpectralCollisionError:
            if lambda1 is not None and lambda2 is not None:
                raise
    raise SpectralCollisionError("could not draw poles off the spectrum of Z")


def tau_section(pair, section, m, x):
    """``tau^m(x) = tau_miwa(pair, [(x / eta, lambda1), (m, lambda2)])``."""
    section.check(pair)
    return tau_miwa(
        pair, MiwaPoint([(x / section.eta, section.lambda1), (m, section.lambda2)])
    )


@dataclass(frozen=True)
class TauPolynomial:
    """Coefficients of ``tau^m(x)`` in ascending powers of x.

    ``radius`` and ``max_abs`` describe the interpolation circle and the
    largest ``|tau|`` sampled on it.
    """

    m: complex
    coefficients: np.ndarray
    radius: float
    max_abs: float

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coefficients)

    def roots(self):
        """Roots by companion-matrix eigenvalues."""
        return np.polynomial.polynomial.polyroots(self.coefficients)


def _circle_radius(pair, section, m):
    from .flow import flow_matrix

    return max(1.0, float(np.linalg.norm(flow_matrix(pair, section, m), 2)))


def tau_polynomial(pair, section, m, interp_tol=INTERP_TOL, leading_tol=LEADING_TOL):
    """Interpolate ``tau^m(x)`` from n + 1 samples on a circle.

    The circle has radius ``max(1, ||flow_matrix(m)||_2)`` so it encloses
    every root.  On equispaced nodes the interpolation is a discrete Fourier
    transform and is perfectly conditioned.  The fit is checked at the
    interleaved half-step nodes and against the known leading coefficient.

    Raises
    ------
    ConditioningError
        If either check exceeds its tolerance.
    """
    ts = TauSection(pair, section)
    n = pair.n
    N = n + 1
    r = _circle_radius(pair, section, m)
    nodes = r * np.exp(2j * np.pi * np.arange(N) / N)
    values = np.array([ts(m, x) for x in nodes])
    coeffs = np.fft.fft(values) / N / r ** np.arange(N)

    check_nodes = r * np.exp(2j * np.pi * (np.arange(N) + 0.5) / N)
    check_values = np.array([ts(m, x) for x in check_nodes])
    max_abs = float(max(np.abs(values).max(), np.abs(check_values).max()))
    fitted = np.polynomial.polynomial.polyval(check_nodes, coeffs)
    resid = float(np.abs(fitted - check_values).max()) / max(max_abs, np.finfo(float).tiny)
    if resid > interp_tol:
        raise ConditioningError(f"interpolation residual {resid:.3e} exceeds {interp_tol:.1e}")

    lead = ts.leading_coefficient()
    lead_err = abs(coeffs[-1] - lead) / abs(lead)
    if lead_err > leading_tol:
        raise ConditioningError(
            f"leading coefficient off by relative {lead_err:.3e} (expected {lead})"
        )
    return TauPolynomial(complex(m), coeffs, r, max_abs)


def tau_roots(pair, section, m):
    """Roots of ``tau^m(x)``: the eigenvalues of the flow matrix at m.

    Returned as an array in no particular order.
    """
    from .flow import flow_matrix

    section.check(pair)
    return np.linalg.eigvals(flow_matrix(pair, section, m))


def polish_roots(pair, section, m, roots, max_iter=8):
    """Newton-refine approximate roots of ``tau^m`` on the determinant itself.

    Uses ``d/dx log tau^m(x) = tr(M(x)^{-1} R1) / eta`` with
    ``M(x) = X + (x / eta) R1 + m R2``, so each step costs one linear solve.
    Independent of the flow matrix; meant to sharpen companion-matrix roots
    of :class:`TauPolynomial`, whose accuracy degrades when roots are widely
    spread.
    """
    ts = TauSection(pair, section)
    out = []
    for x in np.asarray(roots, dtype=complex):
        for _ in range(max_iter):
            try:
                logdiff = np.trace(np.linalg.solve(ts.matrix(m, x), ts.R1)) / section.eta
            except np.linalg.LinAlgError:
                break
            if logdiff == 0 or not np.isfinite(logdiff):
                break
            dx = 1.0 / logdiff
            x = x - dx
            if abs(dx) <= 4 * np.finfo(float).eps * max(1.0, abs(x)):
                break
        out.append(x)
    return np.array(out)


def closed_form_2x2(eta, lambda1, lambda2, m):
    """The printed two-branch eigenvalue formula for the nilpotent 2x2 pair.

    Returns ``(x_plus, x_minus)`` with

        sigma = sqrt(eta^2 (-4 l1 l2 m (-1 + l2 + m) + (l1 m + l2 (-1 + l1 + m))^2))
        x_pm  = (-eta (l1 m + l2 (-1 + l1 + m)) +- sigma) / (2 l2)

    using the principal square root.  This does *not* agree with the
    eigenvalues of the flow matrix; see :func:`compare_closed_form_2x2`.
    """
    if lambda2 == 0:
        raise ZeroDivisionError("lambda2 must be non-zero")
    b = lambda1 * m + lambda2 * (-1 + lambda1 + m)
    sigma = cmath.sqrt(eta**2 * (-4 * lambda1 * lambda2 * m * (-1 + lambda2 + m) + b**2))
    return ((-eta * b + sigma) / (2 * lambda2), (-eta * b - sigma) / (2 * lambda2))


@dataclass(frozen=True)
class TwoByTwoComparison:
    """Printed closed form versus computed roots for the nilpotent 2x2 pair.

    ``tau_at_*`` hold ``|tau^m(x)| / max |tau|`` on the interpolation circle:
    near zero means the candidate really is a root.
    """

    eta: complex
    lambda1: complex
    lambda2: complex
    m: complex
    derived_roots: np.ndarray
    printed_roots: np.ndarray
    tau_at_derived: np.ndarray
    tau_at_printed: np.ndarray
    max_distance: float
    derived_separation: float
    printed_separation: float
    agrees: bool


def compare_closed_form_2x2(eta, lambda1, lambda2, m, tol=1e-8):
    """Check the printed 2x2 formula against tau by brute-force evaluation."""
    from .flow import match_multisets
    from .phase_space import paper_2x2_pair

    pair = paper_2x2_pair()
    section = LatticeSection(eta, lambda1, lambda2)
    derived = tau_roots(pair, section, m)
    printed = np.array(closed_form_2x2(eta, lambda1, lambda2, m))
    perm = match_multisets(derived, printed)
    printed = printed[perm]
    poly = tau_polynomial(pair, section, m)
    ts = TauSection(pair, section)
    at_derived = np.array([abs(ts(m, x)) for x in derived]) / poly.max_abs
    at_printed = np.array([abs(ts(m, x)) for x in printed]) / poly.max_abs
    dist = float(np.abs(derived - printed).max())
    scale = max(1.0, float(np.abs(derived).max()))
    return TwoByTwoComparison(
        section.eta,
        section.lambda1,
        section.lambda2,
        complex(m),
        derived,
        printed,
        at_derived,
        at_printed,
        dist,
        float(abs(derived[0] - derived[1])),
        float(abs(printed[0] - printed[1])),
        dist <= tol * scale,
    )
