"""
Pairs with a rank-one commutator
================================

Particle positions and momenta give a pair (X, Z) whose shifted commutator
[X, Z] + I is the all-ones matrix.  Symmetries move the pair around
without leaving the space.
"""

import numpy as np

from cm_bethe import (
    Conjugate,
    RationalFunction,
    SwapTranspose,
    TranslateX,
    apply_symmetry,
    check_commutator,
    cm_pair_from_positions,
    paper_2x2_pair,
)

# three particles on a line, at rest
pair = cm_pair_from_positions([0.0, 1.0, 2.5], [0.0, 0.5, -0.2])
print("Z =\n", np.round(pair.Z, 3))
print("[X, Z] + I =\n", np.round(pair.commutator.real, 12))

# the rank test reports singular values and a relative defect
report = check_commutator(pair.X, pair.Z)
print(report.status, "defect", report.defect)

# a nilpotent pair with no particle interpretation
nil = paper_2x2_pair()
print("nilpotent pair singular values", check_commutator(nil.X, nil.Z).singular_values)

# X -> X + f(Z) and similarity keep the commutator rank one
g = np.array([[2, 1, 0], [0, 1, 1j], [1, 0, 3]])
moved = apply_symmetry(pair, TranslateX(RationalFunction(poly=[1.0, 0.0, 0.1], poles=[(5.0, 2.0)])))
moved = apply_symmetry(moved, Conjugate(g))
print("after translation and conjugation:", check_commutator(moved.X, moved.Z).defect)

# swapping and transposing is an involution of the space
back = apply_symmetry(apply_symmetry(pair, SwapTranspose()), SwapTranspose())
print("swap-transpose twice is the identity:", np.allclose(back.X, pair.X))
