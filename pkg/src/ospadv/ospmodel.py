"""The symmetrized ordered search function and its full adversary matrix.

Inputs are the ``2n`` cyclic rotations of ``1^n 0^n``, stored as integer
bitmasks whose most significant bit is bit 1 (the leftmost character). Query
positions are numbered ``1 .. 2n`` from the left.

Everything here works on the unreduced ``2n x 2n`` matrices and exists to
check, by brute force, that the Toeplitz reduction used elsewhere is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import spectral_norm, sym_toeplitz

__all__ = [
    "MAX_FULL_N",
    "OspInstance",
    "AdversaryWeights",
    "inputs",
    "hamming_distances",
    "build_gamma",
    "d_mask",
    "bit_matrix",
    "masked_norms",
    "adv_objective",
    "SymmetryReport",
    "verify_symmetry",
    "bipartition",
]

# the full-matrix path is a test oracle; keep it to sizes it can afford
MAX_FULL_N = 128


@dataclass(frozen=True)
class OspInstance:
    n: int
    inputs: tuple[int, ...]

    @property
    def width(self) -> int:
        return 2 * self.n

    def bits(self, k: int) -> str:
        return format(self.inputs[k], f"0{self.width}b")

    def bit(self, k: int, i: int) -> int:
        """Bit at query position ``i`` (1-based, from the left) of input ``k``."""
        return (self.inputs[k] >> (self.width - i)) & 1


@dataclass(frozen=True)
class AdversaryWeights:
    """Weights ``gamma[i-1]`` for input pairs at Hamming distance ``2i``.

    Entries may have either sign.
    """

    gamma: np.ndarray = field()

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float).ravel()
        if g.size == 0:
            raise ValueError("need at least one weight")
        if not np.all(np.isfinite(g)):
            raise ValueError("weights must be finite")
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)

    @property
    def n(self) -> int:
        return int(self.gamma.size)

    def toeplitz(self) -> np.ndarray:
        """The reduced block ``Toeplitz(gamma_n, ..., gamma_1)``."""
        return sym_toeplitz(self.gamma[::-1])


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_FULL_N:
        raise ValueError(f"full 2n x 2n assembly supports n <= {MAX_FULL_N}, got {n}")


def inputs(n: int) -> OspInstance:
    """The ``2n`` rotations of ``1^n 0^n``; entry ``k`` is shifted right by ``k``."""
    _check_n(n)
    width = 2 * n
    full = (1 << width) - 1
    base = ((1 << n) - 1) << n
    rots = tuple(((base >> k) | (base << (width - k))) & full for k in range(width))
    return OspInstance(n, rots)


def bit_matrix(inst: OspInstance) -> np.ndarray:
    """``bits[k, i-1]`` is bit ``i`` of input ``k``."""
    return np.array(
        [[inst.bit(k, i) for i in range(1, inst.width + 1)] for k in range(inst.width)],
        dtype=bool,
    )


def hamming_distances(inst: OspInstance) -> np.ndarray:
    """Pairwise Hamming distances by direct bit comparison."""
    bits = bit_matrix(inst)
    return np.sum(bits[:, None, :] != bits[None, :, :], axis=2)


def build_gamma(w: AdversaryWeights) -> np.ndarray:
    """Full adversary matrix: ``Gamma[x, y] = gamma_{d(x,y)/2}``, zero diagonal."""
    inst = inputs(w.n)
    d = hamming_distances(inst)
    lookup = np.concatenate(([0.0], w.gamma))
    G = lookup[d // 2]
    G.setflags(write=False)
    return G


def d_mask(n: int, i: int) -> np.ndarray:
    """0/1 matrix marking input pairs that differ at query position ``i`` (1-based)."""
    if not 1 <= i <= 2 * n:
        raise IndexError(f"query position {i} out of range 1..{2 * n}")
    inst = inputs(n)
    col = np.array([inst.bit(k, i) for k in range(2 * n)])
    D = (col[:, None] != col[None, :]).astype(float)
    D.setflags(write=False)
    return D


def masked_norms(w: AdversaryWeights) -> np.ndarray:
    """``||Gamma o D_i||`` for every query position ``i = 1 .. 2n``.

    ``Gamma o D_i`` only couples inputs with bit ``i`` set to inputs with bit
    ``i`` clear, so its norm is the top singular value of that cross block.
    """
    G = build_gamma(w)
    bits = bit_matrix(inputs(w.n))
    out = np.empty(bits.shape[1])
    for i in range(bits.shape[1]):
        on = bits[:, i]
        out[i] = np.linalg.svd(G[np.ix_(on, ~on)], compute_uv=False)[0]
    return out


def adv_objective(w: AdversaryWeights) -> float:
    """``gamma_n + 2 * (gamma_1 + ... + gamma_{n-1})``."""
    g = w.gamma
    return float(g[-1] + 2.0 * np.sum(g[:-1]))


def bipartition(M: np.ndarray, tol: float = 0.0):
    """Split the index set of a bipartite masked matrix.

    Returns ``(side_a, side_b)`` if ``M`` vanishes (within ``tol``) on both
    diagonal blocks of some two-colouring of its support graph, else ``None``.
    Isolated vertices go to ``side_a``.
    """
    n = M.shape[0]
    adj = np.abs(M) > tol
    colour = -np.ones(n, dtype=int)
    for s in range(n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(adj[u]):
                if colour[v] < 0:
                    colour[v] = 1 - colour[u]
                    stack.append(v)
                elif colour[v] == colour[u]:
                    return None
    return np.flatnonzero(colour == 0), np.flatnonzero(colour == 1)


@dataclass
class SymmetryReport:
    """Residuals of the three symmetry consequences checked by :func:`verify_symmetry`."""

    tol: float
    uniform_residual: float
    uniform_eigenvalue: float
    objective: float
    mask_spread: float
    block_residual: float
    masked_norms: np.ndarray
    toeplitz_norm: float

    @property
    def passed(self) -> bool:
        return max(self.uniform_residual, self.mask_spread, self.block_residual) <= self.tol

    def lines(self):
        def mark(r):
            return "PASS" if r <= self.tol else "FAIL"

        yield f"uniform_eigenvector residual={self.uniform_residual:.3e} {mark(self.uniform_residual)}"
        yield f"masked_norms_equal spread={self.mask_spread:.3e} {mark(self.mask_spread)}"
        yield f"block_equals_toeplitz residual={self.block_residual:.3e} {mark(self.block_residual)}"


def verify_symmetry(w: AdversaryWeights, tol: float = 1e-9) -> SymmetryReport:
    """Check the reduction of the full adversary matrix to one Toeplitz block.

    (a) the all-ones vector is an eigenvector of ``Gamma`` with eigenvalue
    :func:`adv_objective`; (b) all ``2n`` masked norms coincide; (c) the norm
    of ``Gamma o D_{2n}`` equals the norm of the reduced Toeplitz block.
    Failures are reported through the residuals, never raised.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    G = build_gamma(w)
    ones = np.ones(G.shape[0])
    obj = adv_objective(w)
    Gu = G @ ones
    uniform_residual = float(np.max(np.abs(Gu - obj * ones)))
    norms = masked_norms(w)
    tnorm = spectral_norm(w.toeplitz())
    return SymmetryReport(
        tol=tol,
        uniform_residual=uniform_residual,
        uniform_eigenvalue=float(Gu[0]),
        objective=obj,
        mask_spread=float(norms.max() - norms.min()),
        block_residual=float(abs(norms[-1] - tnorm)),
        masked_norms=norms,
        toeplitz_norm=tnorm,
    )
