"""JSON and CSV encodings for matrices, pairs, reports and trajectories.

Complex numbers are ``[re, im]`` arrays, matrices are row-major.  Output is
deterministic: keys keep insertion order and floats are written with 17
significant digits (non-finite values become ``null``).
"""

import csv
import io
import json
import math
from collections import defaultdict

import numpy as np

from .errors import InputError
from .phase_space import validate_pair

__all__ = [
    "decode_complex",
    "decode_matrix",
    "decode_pair",
    "dumps",
    "encode_matrix",
    "encode_pair",
    "encode_report",
    "encode_section",
    "encode_trajectory",
    "read_trajectory",
    "trajectory_csv",
]


def _float(x):
    x = float(x)
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def dumps(obj, indent=2, _level=0):
    """Deterministic JSON text."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return f"[{_float(obj.real)}, {_float(obj.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [dumps(v, indent, _level + 1) for v in obj]
        if all("\n" not in p for p in parts) and sum(len(p) for p in parts) < 100:
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(pad + p for p in parts) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode_complex(value):
    """``[re, im]`` (or a bare real number) to ``complex``."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    raise InputError(f"not a complex number: {value!r}")


def encode_matrix(M):
    M = np.asarray(M, dtype=complex)
    return {"n": int(M.shape[0]), "entries": [[complex(z) for z in row] for row in M]}


def decode_matrix(obj):
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError("matrix must be an object with 'entries'")
    rows = obj["entries"]
    if not isinstance(rows, list) or not rows:
        raise InputError("matrix entries must be a non-empty list of rows")
    try:
        M = np.array([[decode_complex(z) for z in row] for row in rows], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"ragged or malformed matrix: {exc}") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"matrix is not square: shape {M.shape}")
    if "n" in obj and obj["n"] != M.shape[0]:
        raise InputError(f"declared n={obj['n']} but matrix is {M.shape[0]}x{M.shape[0]}")
    return M


def encode_pair(pair):
    return {"X": encode_matrix(pair.X), "Z": encode_matrix(pair.Z)}


def decode_pair(obj, tol):
    """Parse ``{"X": ..., "Z": ...}`` and validate (may raise PairRejected)."""
    if not isinstance(obj, dict) or "X" not in obj or "Z" not in obj:
        raise InputError("pair must be an object with 'X' and 'Z'")
    X, Z = decode_matrix(obj["X"]), decode_matrix(obj["Z"])
    if X.shape != Z.shape:
        raise InputError(f"X is {X.shape[0]}x{X.shape[0]} but Z is {Z.shape[0]}x{Z.shape[0]}")
    return validate_pair(X, Z, tol)


def encode_section(section):
    return {"eta": section.eta, "lambda1": section.lambda1, "lambda2": section.lambda2}


def encode_report(report, **extra):
    out = {
        "identity": report.identity,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "abs": report.abs_residual,
        "rel": report.rel_residual,
        "status": report.status,
    }
    if report.note:
        out["note"] = report.note
    out.update(extra)
    return out


def encode_trajectory(traj):
    return {
        "section": encode_section(traj.section),
        "m_values": list(traj.m_values),
        "roots": [[complex(z) for z in row] for row in traj.roots],
        "match_cost": list(traj.match_cost),
        "flagged_steps": list(traj.flagged_steps),
    }


def trajectory_csv(traj):
    """CSV text with header ``m,j,re,im``, one row per (time, particle)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "j", "re", "im"])
    for m, row in zip(traj.m_values, traj.roots):
        for j, z in enumerate(row):
            w.writerow([m, j, _float(z.real), _float(z.imag)])
    return buf.getvalue()


def read_trajectory(text):
    """Parse a trajectory written as JSON or CSV.

    Returns ``(m_values, roots, section_or_None)`` with ``roots`` of shape
    ``(len(m_values), n)``.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(text)
        try:
            m_values = [int(m) for m in obj["m_values"]]
            roots = np.array([[decode_complex(z) for z in row] for row in obj["roots"]])
            sec = obj.get("section")
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed trajectory JSON: {exc}") from exc
        return m_values, roots, sec
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or set(rows[0]) != {"m", "j", "re", "im"}:
        raise InputError("trajectory CSV must have header m,j,re,im")
    levels = defaultdict(dict)
    try:
        for r in rows:
            levels[int(r["m"])][int(r["j"])] = complex(float(r["re"]), float(r["im"]))
    except ValueError as exc:
        raise InputError(f"malformed trajectory CSV: {exc}") from exc
    m_values = sorted(levels)
    sizes = {len(levels[m]) for m in m_values}
    if len(sizes) != 1:
        raise InputError("every time level must have the same number of roots")
    roots = np.array([[levels[m][j] for j in sorted(levels[m])] for m in m_values])
    return m_values, roots, None
