"""
Tau functions and their roots
=============================

On a lattice section the tau function is a polynomial of degree n in x.
Its roots are the eigenvalues of a single matrix, and the interpolated
polynomial serves as an independent check.
"""

import numpy as np

from cm_bethe import (
    LatticeSection,
    match_multisets,
    polish_roots,
    random_cauchy_pair,
    tau_polynomial,
    tau_roots,
    tau_section,
)

rng = np.random.default_rng(4)
pair = random_cauchy_pair(rng, 5)
section = LatticeSection(eta=0.8 + 0.1j, lambda1=2.0 + 1.0j, lambda2=-1.5)
m = 2

poly = tau_polynomial(pair, section, m)
print("degree", poly.degree, "leading coefficient", poly.coefficients[-1])
print("leading coefficient at m = 7", tau_polynomial(pair, section, 7).coefficients[-1])

# eigenvalues of the flow matrix
roots = tau_roots(pair, section, m)
print("roots", np.round(roots, 6))
print("|tau| at roots", [f"{abs(tau_section(pair, section, m, x)):.1e}" for x in roots])

# companion matrix roots, raw and after Newton polishing on the determinant
companion = poly.roots()
polished = polish_roots(pair, section, m, companion)
for name, other in (("companion", companion), ("polished", polished)):
    other = other[match_multisets(roots, other)]
    print(name, "max distance", np.abs(roots - other).max())
