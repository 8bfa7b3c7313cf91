"""Numerical verification of the determinant identities behind the Bethe roots.

Each check returns :class:`ResidualReport` records.  A check passes when the
relative residual is within tolerance, or the absolute residual is below a
floor proportional to the natural scale of the quantities involved.  When a
genericity assumption fails (vanishing adjugate, ``gamma mu = 0``,
``lambda1 = lambda2``, colliding roots) the status is ``"degenerate"``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentRootError, InputError, SingularityError, VanishingAdjugateError
from .linalg import det_scale
from .phase_space import evaluate_pq, scalar_data, validate_pair
from .tau import TauSection, tau_polynomial

__all__ = [
    "CHECK_TOL",
    "DEGENERATE_FLOOR",
    "ResidualReport",
    "check_factorization",
    "check_hirota_ratio",
    "check_lemma1",
    "check_rnba",
    "factorization_prefactor",
    "summarize",
]

CHECK_TOL = 1e-8
DEGENERATE_FLOOR = 1e-12
ROOT_TOL = 1e-7

PASS, FAIL, DEGENERATE = "pass", "fail", "degenerate"


@dataclass(frozen=True)
class ResidualReport:
    identity: str
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    status: str
    note: str = ""

    @property
    def ok(self):
        return self.status != FAIL


def _report(identity, lhs, rhs, tol, abs_floor, status=None, note=""):
    lhs, rhs = complex(lhs), complex(rhs)
    diff = abs(lhs - rhs)
    denom = max(abs(lhs), abs(rhs), abs_floor)
    rel = diff / denom if denom > 0 else (0.0 if diff == 0 else np.inf)
    if status is None:
        status = PASS if (rel <= tol or diff <= abs_floor) else FAIL
    return ResidualReport(identity, lhs, rhs, float(diff), float(rel), status, note)


def summarize(reports):
    """Counts of each status, in fixed key order."""
    counts = {PASS: 0, DEGENERATE: 0, FAIL: 0}
    for r in reports:
        counts[r.status] += 1
    return counts


# -- rank-one determinant identities at a singular X ------------------------


def check_lemma1(pair, lam_a, lam_b, tol=CHECK_TOL, floor=DEGENERATE_FLOOR, scalars=None):
    """The three determinant identities for a pair with det X = 0.

    1. ``det((a I - Z) X + I) = gamma p(a)``
    2. ``det(X (a I - Z) - I) = -mu q(a)``
    3. ``det((a I - Z) X (b I - Z) + (b - a) I) = (b - a) p(a) q(b)``

    with ``a = lam_a``, ``b = lam_b``.  Left sides are direct determinants;
    right sides come from :func:`evaluate_pq`.  If ``rank X <= n - 2`` both
    sides vanish identically and all three reports are degenerate.
    """
    n = pair.n
    eye = np.eye(n, dtype=complex)
    X, Z = pair.X, pair.Z
    Aa, Ab = lam_a * eye - Z, lam_b * eye - Z
    mats = [Aa @ X + eye, X @ Aa - eye, Aa @ X @ Ab + (lam_b - lam_a) * eye]
    lhs = [complex(np.linalg.det(M)) for M in mats]
    floors = [floor * det_scale(M) for M in mats]
    labels = ["lemma1.1", "lemma1.2", "lemma1.3"]
    try:
        if scalars is None:
            scalars = scalar_data(pair)
    except VanishingAdjugateError as exc:
        return [
            _report(lab, l, 0.0, tol, fl, DEGENERATE, f"vanishing adjugate: {exc}")
            for lab, l, fl in zip(labels, lhs, floors)
        ]
    p_a, q_a, _ = evaluate_pq(pair, lam_a, scalars)
    _, q_b, _ = evaluate_pq(pair, lam_b, scalars)
    rhs = [
        scalars.gamma * p_a,
        -scalars.mu * q_a,
        (lam_b - lam_a) * p_a * q_b,
    ]
    return [_report(lab, l, r, tol, fl) for lab, l, r, fl in zip(labels, lhs, rhs, floors)]


# -- factorization of tau at a root -----------------------------------------


def factorization_prefactor(section, sign):
    """Constant ``c`` in ``tau^{m-s}(x + s eta) = c / (gamma mu) ...``.

    ``lambda1 - lambda2`` for ``sign="plus"``, ``lambda2 - lambda1`` for
    ``sign="minus"``.  This is the convention the determinants satisfy.
    """
    if sign == "plus":
        return section.lambda1 - section.lambda2
    if sign == "minus":
        return section.lambda2 - section.lambda1
    raise InputError(f"sign must be 'plus' or 'minus', got {sign!r}")


def _verify_root(ts, m, root, root_tol):
    poly = tau_polynomial(ts.pair, ts.section, m)
    value = ts(m, root)
    if abs(value) > root_tol * poly.max_abs:
        raise InconsistentRootError(
            f"|tau^m({root})| = {abs(value):.3e} exceeds {root_tol:.1e} * {poly.max_abs:.3e}"
        )
    return poly


def check_factorization(
    pair, section, m, root, sign, tol=1e-7, floor=DEGENERATE_FLOOR, root_tol=ROOT_TOL
):
    """Factorization of tau one lattice step away from a root of ``tau^m``.

    With ``s = +1`` (``sign="plus"``) or ``s = -1`` (``"minus"``) checks

        tau^{m-s}(root + s eta) = c / (gamma mu) tau^{m-s}(root) tau^m(root + s eta)

    where gamma, mu belong to the singular matrix
    ``X' = X + (root / eta)(lambda1 I - Z)^{-1} + m (lambda2 I - Z)^{-1}`` and
    ``c`` is :func:`factorization_prefactor`.

    Raises :class:`InconsistentRootError` if `root` is not a root of tau^m.
    """
    s = {"plus": 1, "minus": -1}.get(sign)
    if s is None:
        raise InputError(f"sign must be 'plus' or 'minus', got {sign!r}")
    label = f"factorization.{sign}"
    ts = TauSection(pair, section)
    eta = section.eta
    _verify_root(ts, m, root, root_tol)

    lhs, lhs_scale = ts.value_and_scale(m - s, root + s * eta)
    t1 = ts(m - s, root)
    t2 = ts(m, root + s * eta)
    abs_floor = floor * lhs_scale
    if section.resonant:
        return _report(label, lhs, 0.0, tol, abs_floor, DEGENERATE, "lambda1 == lambda2")

    Xp = ts.matrix(m, root)
    terms_scale = (
        np.linalg.norm(pair.X, 2)
        + abs(root / eta) * np.linalg.norm(ts.R1, 2)
        + abs(m) * np.linalg.norm(ts.R2, 2)
    )
    try:
        shifted = validate_pair(Xp, pair.Z)
        sd = scalar_data(shifted, scale=terms_scale)
    except SingularityError as exc:
        raise InconsistentRootError(f"X' is not singular at root {root}: {exc}") from exc
    except VanishingAdjugateError as exc:
        return _report(label, lhs, 0.0, tol, abs_floor, DEGENERATE, f"vanishing adjugate: {exc}")
    gm = sd.gamma * sd.mu
    if abs(gm) < floor * sd.scale:
        return _report(label, lhs, np.nan, tol, abs_floor, DEGENERATE, "gamma * mu ~ 0")
    rhs = factorization_prefactor(section, sign) / gm * t1 * t2
    return _report(label, lhs, rhs, tol, abs_floor)


def check_hirota_ratio(
    pair, section, m, root, tol=1e-6, floor=DEGENERATE_FLOOR, root_tol=ROOT_TOL
):
    """Three-term ratio at a root ``x`` of ``tau^m``:

        tau^{m+1}(x) tau^m(x - eta) tau^{m-1}(x + eta)
        ---------------------------------------------- = -1
        tau^{m+1}(x - eta) tau^{m-1}(x) tau^m(x + eta)

    Degenerate when any denominator factor is below ``floor`` times the
    Hadamard bound of its matrix.
    """
    ts = TauSection(pair, section)
    eta = section.eta
    _verify_root(ts, m, root, root_tol)
    num = [ts(m + 1, root), ts(m, root - eta), ts(m - 1, root + eta)]
    den_args = [(m + 1, root - eta), (m - 1, root), (m, root + eta)]
    den = []
    for mm, xx in den_args:
        value, scale = ts.value_and_scale(mm, xx)
        if abs(value) < floor * scale:
            return _report(
                "hirota_ratio", np.nan, -1.0, tol, 0.0, DEGENERATE,
                f"tau^{mm}({xx}) ~ 0 (resonance)",
            )
        den.append(value)
    ratio = np.prod(num) / np.prod(den)
    return _report("hirota_ratio", ratio, -1.0, tol, 0.0)


# -- the Bethe product equations --------------------------------------------


def check_rnba(roots_prev, roots_cur, roots_next, eta, j, tol=1e-6, floor=DEGENERATE_FLOOR):
    """Bethe equation for particle `j` at time m, from roots at m - 1, m, m + 1.

    Evaluates, with ``x = roots_cur[j]``,

        prod_k (x - a_k)(x - b_k + eta)(x - c_k - eta)
               -----------------------------------------
               (x - a_k + eta)(x - b_k - eta)(x - c_k)

    for ``a, b, c = roots_prev, roots_cur, roots_next`` (the ``k = j`` term
    included, contributing -1 from the middle factors) and compares with -1.
    Any factor below ``floor`` times the root scale marks a resonance and
    the report is degenerate, naming the colliding indices.
    """
    a = np.asarray(roots_prev, dtype=complex).ravel()
    b = np.asarray(roots_cur, dtype=complex).ravel()
    c = np.asarray(roots_next, dtype=complex).ravel()
    if not (a.size == b.size == c.size):
        raise InputError("root multisets must have equal sizes")
    eta = complex(eta)
    if eta == 0:
        raise InputError("eta must be non-zero")
    x = b[j]
    scale = max(abs(eta), float(np.abs(np.concatenate([a, b, c])).max()))
    factors = {
        "x-prev": x - a,
        "x-cur+eta": x - b + eta,
        "x-next-eta": x - c - eta,
        "x-prev+eta": x - a + eta,
        "x-cur-eta": x - b - eta,
        "x-next": x - c,
    }
    hits = [
        f"{name}[k={k}]"
        for name, vals in factors.items()
        for k in np.flatnonzero(np.abs(vals) < floor * scale)
    ]
    if hits:
        return _report(
            "rnba", np.nan, -1.0, tol, 0.0, DEGENERATE, f"j={j}: collision at " + ", ".join(hits)
        )
    num = factors["x-prev"] * factors["x-cur+eta"] * factors["x-next-eta"]
    den = factors["x-prev+eta"] * factors["x-cur-eta"] * factors["x-next"]
    product = np.prod(num / den)
    return _report("rnba", product, -1.0, tol, 0.0, note=f"j={j}")
