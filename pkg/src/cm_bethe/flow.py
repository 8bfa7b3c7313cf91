"""Bethe roots as eigenvalues of a matrix moving linearly in discrete time.

The flow matrix

    F(m) = -eta X (lambda1 I - Z) - m eta (lambda2 I - Z)^{-1} (lambda1 I - Z)

has the roots of ``tau^m(x)`` as eigenvalues, and ``F(m + 1) - F(m)`` does
not depend on m.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InputError
from .tau import tau_roots

log = logging.getLogger(__name__)

__all__ = [
    "Trajectory",
    "flow_matrix",
    "match_multisets",
    "run_trajectory",
    "step_matrix",
]

COLLISION_FACTOR = 10.0
TIE_WEIGHT = 1e-9


def _pieces(pair, section):
    section.check(pair)
    n = pair.n
    eye = np.eye(n, dtype=complex)
    A1 = section.lambda1 * eye - pair.Z
    step = -section.eta * np.linalg.solve(section.lambda2 * eye - pair.Z, A1)
    base = -section.eta * pair.X @ A1
    return base, step


def flow_matrix(pair, section, m):
    """``F(m)``; raises :class:`SpectralCollisionError` if a pole hits spec(Z)."""
    base, step = _pieces(pair, section)
    return base + m * step


def step_matrix(pair, section):
    """``F(m + 1) - F(m) = -eta (lambda2 I - Z)^{-1} (lambda1 I - Z)``."""
    return _pieces(pair, section)[1]


def _lex_order(z):
    z = np.asarray(z, dtype=complex)
    return np.lexsort((z.imag, z.real))


def match_multisets(a, b):
    """Permutation ``perm`` minimizing ``sum |a[i] - b[perm[i]]|``.

    Ties in that sum are broken towards the smaller ``sum |a[i] - b[perm[i]]|**2``
    (so equal-cost swaps prefer uniform displacements), then by visiting both
    inputs in lexicographic (re, im) order.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        raise InputError(f"multisets differ in size: {a.size} vs {b.size}")
    oa, ob = _lex_order(a), _lex_order(b)
    dist = np.abs(a[oa][:, None] - b[ob][None, :])
    scale = max(float(dist.max()), np.finfo(float).tiny) if dist.size else 1.0
    cost = dist + TIE_WEIGHT * dist**2 / scale
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(a.size, dtype=int)
    perm[oa[rows]] = ob[cols]
    return perm


@dataclass
class Trajectory:
    """Roots ``x_j^m`` for consecutive integer m, columns tracking particles."""

    section: object
    m_values: List[int]
    roots: np.ndarray  # shape (len(m_values), n)
    match_cost: List[float] = field(default_factory=list)
    flagged_steps: List[int] = field(default_factory=list)

    @property
    def n(self):
        return self.roots.shape[1]


def run_trajectory(pair, section, m_from, m_to):
    """Eigenvalues of ``F(m)`` for ``m = m_from .. m_to``, matched step to step.

    The first level is sorted lexicographically; each later level is
    permuted to the optimal assignment with its predecessor.  A step whose
    largest matched distance exceeds ``10 |eta|`` is logged and recorded in
    ``flagged_steps`` (index of the later level), but not rejected.
    """
    if m_from > m_to:
        raise InputError(f"m_from ({m_from}) > m_to ({m_to})")
    section.check(pair)
    m_values = list(range(int(m_from), int(m_to) + 1))
    first = tau_roots(pair, section, m_values[0])
    rows = [first[_lex_order(first)]]
    costs, flagged = [], []
    threshold = COLLISION_FACTOR * abs(section.eta)
    for i, m in enumerate(m_values[1:], start=1):
        cur = tau_roots(pair, section, m)
        cur = cur[match_multisets(rows[-1], cur)]
        dist = np.abs(cur - rows[-1])
        costs.append(float(dist.sum()))
        if dist.max() > threshold:
            flagged.append(i)
            log.warning("step to m=%s moves a root by %.3g > %.3g", m, dist.max(), threshold)
        rows.append(cur)
    return Trajectory(section, m_values, np.array(rows), costs, flagged)
