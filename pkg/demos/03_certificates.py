"""Walking through the optimality certificate for one n.

1. Build the optimal weights and check the Toeplitz block has norm 1 with
   the palindromic eigenvector.
2. Build the rank-one dual witness u u^T and check every superdiagonal
   sums to at least 1; its trace equals the primal value, so both are optimal.
3. Solve the same program numerically and compare.
4. Build the negative-weight dual witness R, split it into P - Q, and bound
   the negative adversary from above.
"""
import sys

import numpy as np

from ospadv.constructions import (
    adv_value,
    dual_witness,
    lemma_bounds,
    negative_dual,
    optimal_weights,
    principal_vector,
    sylvester_transform,
)
from ospadv.linalg import eig_sym, inertia, spectral_norm, trace_norm
from ospadv.ospmodel import adv_objective
from ospadv.sdp import certify, check_dual_feasibility, solve_primal

n = int(sys.argv[1]) if len(sys.argv) > 1 else 10

w = optimal_weights(n)
T = w.toeplitz()
u = principal_vector(n)
print(f"n = {n}")
print("weights         ", np.round(w.gamma, 6))
print("objective       ", adv_objective(w), " closed form", adv_value(n))
print("||T||           ", spectral_norm(T))
print("max |T u - u|   ", np.max(np.abs(T @ u - u)))

dw = dual_witness(n)
rep = check_dual_feasibility(dw.P, mode="nonneg")
print("\ndual witness u u^T")
print("superdiagonal sums", np.round(dw.diag_sums(), 6))
print("feasible        ", rep.feasible, " trace", dw.trace)

sol = solve_primal(n, nonneg=True)
print("\nbarrier solver   value", sol.value, " gap bound", sol.gap)
print("certified gap    ", certify(sol, dw.trace))

nd = negative_dual(n)
print("\nnegative dual R (upper triangle is rank one, mirrored below)")
print("superdiagonal sums", np.round(nd.diag_sums(), 12))
print("inertia         ", inertia(nd.R))
lb = lemma_bounds(nd.v, nd.w)
S = sylvester_transform(nd.v)
print("S R S^T diagonal ", np.round(np.diag(S @ nd.R @ S.T), 6))
print("predicted       ", np.round(lb.sms_diagonal, 6))
print(f"trace norm       {trace_norm(nd.R):.6f} in [{lb.lower:.6f}, {lb.upper:.6f}]")
print(f"<= ADV(2n) + 1 = {adv_value(2 * n) + 1:.6f}")

neg = solve_primal(n, nonneg=False)
print(f"\nnegative optimum {neg.value:.6f}; certified gap to R: {certify(neg, nd.objective):.6f}")
print("eigenvalues of R", np.round(eig_sym(nd.R, want_vectors=False).eigenvalues, 5))
