"""
Roots moving in discrete time
=============================

The flow matrix changes by a constant step from m to m + 1, so its
eigenvalues trace out trajectories.  Consecutive levels satisfy the
Bethe product equations.
"""

import numpy as np

from cm_bethe import check_rnba, random_cauchy_pair, random_section, run_trajectory

rng = np.random.default_rng(21)
pair = random_cauchy_pair(rng, 3)
section = random_section(rng, pair)

traj = run_trajectory(pair, section, -4, 4)
for m, row in zip(traj.m_values, traj.roots):
    print(f"m={m:+d}", "  ".join(f"{x.real:+8.3f}{x.imag:+8.3f}j" for x in row))
print("flagged steps", traj.flagged_steps)

worst = max(
    abs(check_rnba(*traj.roots[i - 1:i + 2], section.eta, j).lhs + 1)
    for i in range(1, len(traj.m_values) - 1)
    for j in range(pair.n)
)
print("worst Bethe equation residual", worst)
