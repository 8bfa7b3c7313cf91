"""
Determinant identities at a root
================================

At a root x of tau^m, one step along the lattice the tau function
factorizes.  The three-term ratio built from the neighbours equals -1.
"""

import numpy as np

from cm_bethe import (
    RationalFunction,
    TranslateX,
    apply_symmetry,
    check_factorization,
    check_hirota_ratio,
    check_lemma1,
    random_cauchy_pair,
    random_section,
    summarize,
    tau_roots,
)

rng = np.random.default_rng(12)
pair = random_cauchy_pair(rng, 4)
section = random_section(rng, pair)
m = 1

# identities for a singular X: shift by one of its eigenvalues first
x0 = np.linalg.eigvals(pair.X)[0]
singular = apply_symmetry(pair, TranslateX(RationalFunction(poly=[-x0])))
for r in check_lemma1(singular, 0.7 + 0.2j, -1.3):
    print(f"{r.identity}: rel residual {r.rel_residual:.1e} ({r.status})")

reports = []
for root in tau_roots(pair, section, m):
    reports.append(check_factorization(pair, section, m, root, "plus"))
    reports.append(check_factorization(pair, section, m, root, "minus"))
    reports.append(check_hirota_ratio(pair, section, m, root))
for r in reports[:3]:
    print(f"{r.identity}: lhs {r.lhs:.6g}  rhs {r.rhs:.6g}")
print(summarize(reports))
