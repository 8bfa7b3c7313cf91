"""
The nilpotent 2x2 pair
======================

With equal poles the tau function of the nilpotent pair is
s (s - 1) / lambda^2 with s = x / eta + m.  The roots form a bound state
moving by -eta per step.  The closed form in ``closed_form_2x2`` predicts
a different spacing; the comparison report shows where tau actually vanishes.
"""

import numpy as np

from cm_bethe import LatticeSection, compare_closed_form_2x2, paper_2x2_pair, run_trajectory

eta, lam = 1.0, 3.0
traj = run_trajectory(paper_2x2_pair(), LatticeSection(eta, lam, lam), 0, 5)
print(np.real_if_close(traj.roots))

report = compare_closed_form_2x2(eta, lam, lam, m=2)
print("derived roots", report.derived_roots, "tau there", report.tau_at_derived)
print("closed form  ", report.printed_roots, "tau there", report.tau_at_printed)
print("separations", report.derived_separation, report.printed_separation)
