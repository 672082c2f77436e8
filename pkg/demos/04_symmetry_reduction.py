"""The full adversary matrix versus its reduced Toeplitz block.

The 2n inputs are rotations of 1^n 0^n. Weighting each pair by its Hamming
distance makes every row sum equal (so the all-ones vector is an
eigenvector), makes every query mask give the same norm, and makes the last
mask split into two copies of one n x n symmetric Toeplitz block. This
script shows all three for a small n and random weights.
"""
import numpy as np

from ospadv.ospmodel import AdversaryWeights, bipartition, build_gamma, d_mask, inputs, verify_symmetry

n = 4
inst = inputs(n)
print("inputs:", " ".join(inst.bits(k) for k in range(2 * n)))

w = AdversaryWeights([1, 2, 3, 4])
print("\nGamma with gamma_i = i (entries show the index i):")
print(build_gamma(w).astype(int))

M = build_gamma(w) * d_mask(n, 2 * n)
a, b = bipartition(M)
print(f"\nGamma o D_{2 * n}: zero within {a.tolist()} and within {b.tolist()}; cross block")
print(M[np.ix_(a, b)].astype(int))

rng = np.random.default_rng(1)
for n in (3, 6, 10):
    rep = verify_symmetry(AdversaryWeights(rng.uniform(-1, 1, n)))
    print(f"\nn={n}, random signed weights")
    for line in rep.lines():
        print("  " + line)
