"""Three weight schemes for n = 16.

The Hilbert-type scheme gives weight 1/(pi i) to pairs at Hamming distance
2i and nothing past distance n. The optimal non-negative weights come from
differences of the correlation of the central binomial sequence; unlike the
Hilbert scheme they rise again at large distances. The negative-weight
optimum is obtained numerically.

Run:  python demos/01_weight_schemes.py [--plot out.png]
"""
import argparse

import numpy as np

from ospadv import adv_objective, hns_weights, optimal_weights, solve_primal

parser = argparse.ArgumentParser()
parser.add_argument("--n", type=int, default=16)
parser.add_argument("--plot", default=None, help="write a PNG of the three profiles")
args = parser.parse_args()
n = args.n

hns = hns_weights(n).gamma
opt = optimal_weights(n).gamma
neg = solve_primal(n, nonneg=False)

print(f"{'i':>3} {'hns':>12} {'optimal':>12} {'negative':>12}")
for i in range(n):
    print(f"{i + 1:>3} {hns[i]:12.6f} {opt[i]:12.6f} {neg.weights.gamma[i]:12.6f}")

print()
print(f"objective  hns={adv_objective(hns_weights(n)):.6f}  "
      f"optimal={adv_objective(optimal_weights(n)):.6f}  negative={neg.value:.6f}")

# where the optimal profile turns upward
rises = np.flatnonzero(np.diff(opt) > 0) + 2
print("optimal weights increase at i =", rises.tolist())

if args.plot:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    i = np.arange(1, n + 1)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(i, hns, "o", mfc="none", label="Hilbert-type")
    ax.plot(i, opt, "s", label="optimal non-negative")
    ax.plot(i, neg.weights.gamma, "^", label="optimal negative")
    ax.set_xlabel("i (pairs at Hamming distance 2i)")
    ax.set_ylabel("weight")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.plot, dpi=120)
    print("wrote", args.plot)
