"""Command line interface: ``cm-bethe {catalog,validate,verify,flow}``.

Exit codes: 0 success / all checks pass, 1 a check failed or a pair was
rejected, 2 input or usage error.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from urllib.parse import parse_qs

import numpy as np

from .errors import CMBetheError, InputError, PairRejected, SpectralCollisionError
from .flow import run_trajectory
from .identities import (
    CHECK_TOL,
    check_factorization,
    check_hirota_ratio,
    check_lemma1,
    check_rnba,
)
from .phase_space import (
    RANK_ONE_TOL,
    RationalFunction,
    SwapTranspose,
    TranslateX,
    Transpose,
    apply_symmetry,
    check_commutator,
    cm_pair_from_positions,
    is_singular,
    paper_2x2_pair,
    random_cauchy_pair,
)
from .serialize import (
    decode_complex,
    decode_pair,
    dumps,
    encode_pair,
    encode_report,
    encode_section,
    encode_trajectory,
    read_trajectory,
    trajectory_csv,
)
from .tau import LatticeSection, random_section, tau_roots

log = logging.getLogger("cm_bethe")

CATALOG = {
    "paper-2x2": "nilpotent pair X=[[0,1],[0,0]], Z=[[0,0],[1,0]]",
    "paper-2x2-transpose": "transpose of paper-2x2",
    "cauchy-N": "Calogero-Moser pair; default positions 0..N-1, momenta 0; "
    "override with ?x=..&p=.. (comma lists)",
    "cauchy-N-transpose": "transpose of cauchy-N (stays in the phase space only for N <= 2)",
    "cauchy-N-swap": "(Z^T, X^T) of cauchy-N",
    "cauchy-N-singular": "cauchy-N translated X -> X - x_1 I so det X = 0",
    "random-N": "random Cauchy pair (positions in the unit disk); ?seed=S",
}


class UsageError(Exception):
    pass


def default_tol():
    env = os.environ.get("CM_BETHE_TOL")
    if env is None:
        return RANK_ONE_TOL
    try:
        return float(env)
    except ValueError:
        raise UsageError(f"CM_BETHE_TOL is not a number: {env!r}")


def parse_complex(text):
    """``"RE,IM"``, a bare real, or a Python complex literal."""
    text = text.strip()
    if "," in text:
        re, im = text.split(",", 1)
        return complex(float(re), float(im))
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a complex number: {text!r}")


def _parse_list(values):
    return [complex(v.strip().replace(" ", "")) for v in values.split(",") if v.strip()]


def catalog_pair(name, tol=RANK_ONE_TOL):
    """Build a catalog pair by name (see ``CATALOG``)."""
    base, _, query = name.partition("?")
    params = {k: v[-1] for k, v in parse_qs(query, keep_blank_values=True).items()}
    try:
        if base in ("paper-2x2", "paper-2x2-transpose"):
            pair = paper_2x2_pair()
            return apply_symmetry(pair, Transpose(), tol) if base.endswith("transpose") else pair
        kind, _, rest = base.partition("-")
        size, _, variant = rest.partition("-")
        if kind in ("cauchy", "random") and size.isdigit() and int(size) >= 1:
            n = int(size)
            if kind == "random" and not variant:
                rng = np.random.default_rng(int(params.get("seed", 0)))
                return random_cauchy_pair(rng, n)
            if kind == "cauchy" and variant in ("", "transpose", "swap", "singular"):
                x = _parse_list(params["x"]) if "x" in params else list(range(n))
                p = _parse_list(params["p"]) if "p" in params else [0] * n
                if len(x) != n or len(p) != n:
                    raise UsageError(f"{base}: need {n} positions and momenta")
                pair = cm_pair_from_positions(x, p, tol=tol)
                if variant == "transpose":
                    pair = apply_symmetry(pair, Transpose(), tol)
                elif variant == "swap":
                    pair = apply_symmetry(pair, SwapTranspose(), tol)
                elif variant == "singular":
                    pair = apply_symmetry(pair, TranslateX(RationalFunction(poly=[-x[0]])), tol)
                return pair
    except ValueError as exc:
        raise UsageError(f"bad catalog parameters in {name!r}: {exc}")
    raise UsageError(f"unknown catalog name {name!r}")


def load_pair(spec, tol):
    """A pair from a JSON file path, ``-`` for stdin, or a catalog name."""
    if spec == "-":
        text = sys.stdin.read()
    elif os.path.exists(spec):
        try:
            with open(spec) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {spec}: {exc}")
    else:
        return catalog_pair(spec, tol)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{spec}: malformed JSON: {exc}")
    return decode_pair(obj, tol)


# -- run configuration --------------------------------------------------------


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 20
    tol: float = RANK_ONE_TOL
    check_tol: float = CHECK_TOL
    eta: complex = None
    lambda1: complex = None
    lambda2: complex = None
    m: complex = None

    def to_json(self):
        out = {"seed": self.seed, "trials": self.trials, "tol": self.tol, "check_tol": self.check_tol}
        for key in ("eta", "lambda1", "lambda2", "m"):
            value = getattr(self, key)
            out[key] = None if value is None else complex(value)
        return out


def _fixed_section(config, pair):
    """The section given on the command line, or None if incomplete."""
    values = (config.eta, config.lambda1, config.lambda2)
    if all(v is None for v in values):
        return None
    if config.eta is not None and config.eta == 0:
        raise UsageError("eta must be non-zero")
    if any(v is None for v in values):
        return None
    section = LatticeSection(*values)
    try:
        section.check(pair)
    except SpectralCollisionError as exc:
        raise UsageError(str(exc))
    return section


def _draw_section(rng, pair, config):
    try:
        return random_section(rng, pair, config.eta, config.lambda1, config.lambda2)
    except SpectralCollisionError as exc:
        raise UsageError(str(exc))


def _draw_m(rng, config):
    return config.m if config.m is not None else int(rng.integers(-5, 6))


def _singular_version(pair, rng):
    if is_singular(pair.X):
        return pair
    shift = np.linalg.eigvals(pair.X)[int(rng.integers(pair.n))]
    return apply_symmetry(pair, TranslateX(RationalFunction(poly=[-shift])))


def run_checks(check, pair, config):
    """Run a check suite over seeded trials; returns a list of report dicts."""
    rng = np.random.default_rng(config.seed)
    fixed = _fixed_section(config, pair)
    kinds = ["lemma1", "factorization", "hirota", "rnba"] if check == "all" else [check]
    out = []
    for trial in range(config.trials):
        section = fixed or _draw_section(rng, pair, config)
        m = _draw_m(rng, config)
        for kind in kinds:
            if kind == "lemma1":
                sp = _singular_version(pair, rng)
                lam_a, lam_b = (complex(*(2 * rng.standard_normal(2))) for _ in range(2))
                for r in check_lemma1(sp, lam_a, lam_b, tol=config.check_tol):
                    out.append(encode_report(r, trial=trial, lam_a=lam_a, lam_b=lam_b))
                continue
            roots = tau_roots(pair, section, m)
            roots = roots[np.lexsort((roots.imag, roots.real))]
            extra = {"trial": trial, "m": m, "section": encode_section(section)}
            if kind == "rnba":
                prev, nxt = tau_roots(pair, section, m - 1), tau_roots(pair, section, m + 1)
                for j in range(pair.n):
                    out.append(encode_report(check_rnba(prev, roots, nxt, section.eta, j), **extra))
                continue
            for root in roots:
                if kind == "factorization":
                    for sign in ("plus", "minus"):
                        r = check_factorization(pair, section, m, root, sign)
                        out.append(encode_report(r, root=root, **extra))
                else:
                    r = check_hirota_ratio(pair, section, m, root)
                    out.append(encode_report(r, root=root, **extra))
    return out


def rnba_from_trajectory(m_values, roots, eta):
    """Check every interior consecutive triple of a stored trajectory."""
    out = []
    for i in range(1, len(m_values) - 1):
        if m_values[i - 1] + 1 != m_values[i] or m_values[i] + 1 != m_values[i + 1]:
            continue
        for j in range(roots.shape[1]):
            r = check_rnba(roots[i - 1], roots[i], roots[i + 1], eta, j)
            out.append(encode_report(r, m=m_values[i]))
    return out


# -- commands -------------------------------------------------------------------


def cmd_catalog(args, out):
    if args.action == "list":
        for name, desc in CATALOG.items():
            out.write(f"{name}\t{desc}\n")
        return 0
    if not args.name:
        raise UsageError("catalog get needs a name")
    out.write(dumps(encode_pair(catalog_pair(args.name, args.tol))) + "\n")
    return 0


def cmd_validate(args, out):
    try:
        pair = load_pair(args.pair, args.tol)
        report = check_commutator(pair.X, pair.Z, args.tol)
    except PairRejected as exc:
        report = exc.report
    payload = {
        "accepted": report.accepted,
        "status": report.status,
        "defect": report.defect,
        "tol": report.tol,
        "singular_values": [float(s) for s in report.singular_values],
    }
    out.write(dumps(payload) + "\n")
    return 0 if report.accepted else 1


def _config_from_args(args):
    return RunConfig(
        seed=args.seed,
        trials=args.trials,
        tol=args.tol,
        check_tol=args.check_tol,
        eta=args.eta,
        lambda1=args.lambda1,
        lambda2=args.lambda2,
        m=args.m,
    )


def cmd_verify(args, out):
    config = _config_from_args(args)
    if config.eta is not None and config.eta == 0:
        raise UsageError("eta must be non-zero")
    if args.trajectory:
        if args.check != "rnba":
            raise UsageError("--trajectory is only meaningful with the rnba check")
        try:
            with open(args.trajectory) as fh:
                m_values, roots, sec = read_trajectory(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.trajectory}: {exc}")
        eta = config.eta
        if eta is None and sec is not None:
            eta = decode_complex(sec["eta"])
        if eta is None:
            raise UsageError("CSV trajectories need --eta")
        reports = rnba_from_trajectory(m_values, roots, eta)
        source = {"trajectory": args.trajectory}
    else:
        if not args.pair:
            raise UsageError("verify needs --pair or --trajectory")
        pair = load_pair(args.pair, config.tol)
        reports = run_checks(args.check, pair, config)
        source = {"pair": args.pair}
    summary = {s: sum(r["status"] == s for r in reports) for s in ("pass", "degenerate", "fail")}
    payload = {"check": args.check, **source, "config": config.to_json(), "summary": summary,
               "reports": reports}
    out.write(dumps(payload) + "\n")
    return 0 if summary["fail"] == 0 else 1


def cmd_flow(args, out):
    config = _config_from_args(args)
    if args.m_from > args.m_to:
        raise UsageError(f"--m-from {args.m_from} exceeds --m-to {args.m_to}")
    pair = load_pair(args.pair, config.tol)
    section = _fixed_section(config, pair) or _draw_section(np.random.default_rng(config.seed), pair, config)
    traj = run_trajectory(pair, section, args.m_from, args.m_to)
    for i, cost in enumerate(traj.match_cost, start=1):
        flag = " COLLISION?" if i in traj.flagged_steps else ""
        sys.stderr.write(f"m={traj.m_values[i]} match_cost={cost:.6g}{flag}\n")
    text = trajectory_csv(traj) if args.format == "csv" else dumps(encode_trajectory(traj)) + "\n"
    if args.out in (None, "-"):
        out.write(text)
    else:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}")
    return 0


# -- argument parsing --------------------------------------------------------------


def _complex_arg(text):
    try:
        return parse_complex(text)
    except (UsageError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    parser = argparse.ArgumentParser(prog="cm-bethe", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, section=True):
        p.add_argument("--pair", help="pair JSON file, '-' for stdin, or a catalog name")
        p.add_argument("--tol", type=float, default=None, help="rank-one tolerance")
        if section:
            p.add_argument("--eta", type=_complex_arg)
            p.add_argument("--lambda1", type=_complex_arg)
            p.add_argument("--lambda2", type=_complex_arg)
            p.add_argument("--m", type=_complex_arg)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--trials", type=int, default=20)
            p.add_argument("--check-tol", type=float, default=CHECK_TOL)

    p = sub.add_parser("catalog", help="list or emit built-in pairs")
    p.add_argument("action", choices=["list", "get"])
    p.add_argument("name", nargs="?")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate", help="test rank([X,Z]+I) = 1")
    common(p, section=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", help="run identity checks over seeded trials")
    p.add_argument("check", choices=["lemma1", "factorization", "hirota", "rnba", "all"])
    common(p)
    p.add_argument("--trajectory", help="trajectory file (CSV or JSON) for the rnba check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("flow", help="export matched root trajectories")
    common(p)
    p.add_argument("--m-from", type=int, default=0)
    p.add_argument("--m-to", type=int, default=5)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_flow)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.tol is None:
            args.tol = default_tol()
        if getattr(args, "pair", "") is None and args.command in ("validate", "flow"):
            raise UsageError(f"{args.command} needs --pair")
        return args.func(args, out)
    except (UsageError, InputError) as exc:
        sys.stderr.write(f"cm-bethe: error: {exc}\n")
        return 2
    except PairRejected as exc:
        sys.stderr.write(f"cm-bethe: {exc}\n")
        return 1 if args.command == "validate" else 2
    except CMBetheError as exc:
        sys.stderr.write(f"cm-bethe: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
