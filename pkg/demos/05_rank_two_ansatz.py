"""Empirical rank-two form of the optimal negative-weight dual.

The optimal negative dual appears to be P - Q = p p^T - q q^T with
p_i = r_i cos(theta_i), q_i = r_i sin(theta_i), linearly spaced angles and
approximately known radii. This script evaluates that guess and compares its
objective |p|^2 + |q|^2 with the solver's optimum. The radii are only
approximate, so the superdiagonal sums are not exactly 1.
"""
import numpy as np

from ospadv.constructions import ansatz_negative_primal
from ospadv.sdp import solve_primal

print(f"{'n':>3} {'max resid':>10} {'ansatz obj':>11} {'sdp value':>10}")
for n in (4, 8, 12, 16, 24, 32):
    a = ansatz_negative_primal(n)
    v = solve_primal(n, nonneg=False).value
    print(f"{n:>3} {a.residuals.max():10.4f} {a.objective:11.5f} {v:10.5f}")

a = ansatz_negative_primal(16)
print("\nn=16 angles / pi:", np.round(a.theta / np.pi, 4))
print("n=16 radii:      ", np.round(a.r, 4))
