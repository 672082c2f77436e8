"""Closed-form adversary weights, eigenvectors and dual certificates.

Conventions: ``n`` is the list size, weights are indexed ``gamma[0] = gamma_1``
(distance-2 pairs) through ``gamma[n-1] = gamma_n``, and for ``n = 2m`` or
``n = 2m + 1`` the integer ``m = n // 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import diag_sum, eig_sym, trace_norm
from .ospmodel import AdversaryWeights
from .seqcomb import correlations, harmonic, xi_table

__all__ = [
    "EULER_GAMMA",
    "hns_weights",
    "hns_value",
    "hns_asymptotic",
    "optimal_weights",
    "adv_value",
    "principal_vector",
    "EigenCondition",
    "eigen_condition_residuals",
    "verify_eigen_condition",
    "DualWitness",
    "dual_witness",
    "symmetrized_rank_one",
    "sylvester_transform",
    "LemmaBounds",
    "lemma_bounds",
    "NegativeDualWitness",
    "negative_dual",
    "madv_upper_bound",
    "asymptotic_estimate",
    "Ansatz",
    "ansatz_negative_primal",
]

EULER_GAMMA = 0.5772156649015329


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


# --- weight schemes -------------------------------------------------------

def hns_weights(n: int) -> AdversaryWeights:
    """Hilbert-type scheme: ``gamma_i = 1/(pi i)`` for ``i <= n//2``, else 0."""
    _check_n(n)
    g = np.zeros(n)
    k = n // 2
    g[:k] = 1.0 / (math.pi * np.arange(1, k + 1))
    return AdversaryWeights(g)


def hns_value(n: int) -> float:
    """``(2/pi) H_{n//2}``, the objective of :func:`hns_weights`."""
    _check_n(n)
    return 2.0 / math.pi * harmonic(n // 2)


def hns_asymptotic(n: int) -> float:
    """``(2/pi)(ln n + gamma_EM - ln 2)``."""
    _check_n(n)
    return 2.0 / math.pi * (math.log(n) + EULER_GAMMA - math.log(2.0))


def _differences(m: int, n: int) -> np.ndarray:
    """``[A_m(i-1) - A_m(i) for i = 1..n]``."""
    a = correlations(m, n + 1)
    return a[:-1] - a[1:]


def optimal_weights(n: int) -> AdversaryWeights:
    """Optimal non-negative weights.

    Even ``n = 2m``: successive differences of the correlation ``A_m``.
    Odd ``n = 2m + 1``: the average of the differences of ``A_m`` and ``A_{m+1}``.
    For ``n = 1`` the lone weight sits on the diagonal and is not doubled in
    the objective, so the odd formula (which gives 1/2) is replaced by 1.
    """
    _check_n(n)
    m = n // 2
    if n == 1:
        return AdversaryWeights([1.0])
    if n % 2 == 0:
        g = _differences(m, n)
    else:
        g = 0.5 * (_differences(m + 1, n) + _differences(m, n))
    return AdversaryWeights(g)


def adv_value(n: int) -> float:
    """Optimal non-negative adversary value.

    ``2 * sum_{i<m} xi_i**2``, plus ``xi_m**2`` when ``n`` is odd.
    """
    _check_n(n)
    m = n // 2
    x = xi_table(m).values
    val = 2.0 * float(np.sum(x[:m] ** 2))
    if n % 2:
        val += float(x[m] ** 2)
    return val


def principal_vector(n: int) -> np.ndarray:
    """Palindromic eigenvector ``(xi_0, .., xi_{m-1}, [xi_m,] xi_{m-1}, .., xi_0)``."""
    _check_n(n)
    m = n // 2
    x = xi_table(m).values
    half = x[:m]
    mid = x[m:m + 1] if n % 2 else x[:0]
    return np.concatenate((half, mid, half[::-1]))


# --- eigenvector condition ------------------------------------------------

class EigenCondition(NamedTuple):
    matrix_residual: float  # max |T u - u|
    scalar_residual: float  # max over the correlation identities
    middle_residual: float  # |A_{m+1}(m) xi_0 - xi_m|, odd n only (0 otherwise)

    @property
    def max(self) -> float:
        return max(self.matrix_residual, self.scalar_residual, self.middle_residual)


def _scalar_identity_residual(m: int) -> float:
    # sum_{i=0}^{m-j-1} (A_m(i+j) - A_m(i+j+1)) xi_i == xi_j  for j < m
    if m == 0:
        return 0.0
    a = correlations(m, m + 1)
    d = a[:-1] - a[1:]
    x = xi_table(m).values
    res = 0.0
    for j in range(m):
        lhs = float(np.dot(d[j:m], x[: m - j]))
        res = max(res, abs(lhs - x[j]))
    return res


def eigen_condition_residuals(n: int) -> EigenCondition:
    _check_n(n)
    m = n // 2
    T = optimal_weights(n).toeplitz()
    u = principal_vector(n)
    matrix_res = float(np.max(np.abs(T @ u - u)))
    if n % 2 == 0:
        scalar_res = _scalar_identity_residual(m)
        middle_res = 0.0
    else:
        scalar_res = max(_scalar_identity_residual(m), _scalar_identity_residual(m + 1))
        x = xi_table(m).values
        a_mid = float(correlations(m + 1, m + 1)[m])
        middle_res = abs(a_mid * x[0] - x[m])
    return EigenCondition(matrix_res, scalar_res, middle_res)


def verify_eigen_condition(n: int) -> float:
    """Largest residual of the eigenvalue-1 condition for :func:`principal_vector`."""
    return eigen_condition_residuals(n).max


# --- non-negative dual ----------------------------------------------------

@dataclass(frozen=True)
class DualWitness:
    """Rank-one certificate ``P = u u^T`` for the non-negative dual program."""

    u: np.ndarray

    @property
    def n(self) -> int:
        return int(self.u.size)

    @property
    def P(self) -> np.ndarray:
        return np.outer(self.u, self.u)

    @property
    def trace(self) -> float:
        return float(np.dot(self.u, self.u))

    def diag_sums(self) -> np.ndarray:
        P = self.P
        return np.array([diag_sum(P, i) for i in range(self.n)])


def dual_witness(n: int) -> DualWitness:
    u = principal_vector(n)
    u.setflags(write=False)
    return DualWitness(u)


# --- symmetrized rank-one matrices ---------------------------------------

def symmetrized_rank_one(v, w) -> np.ndarray:
    """``M[i, j] = v_i w_j`` for ``i <= j``, mirrored below the diagonal."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    upper = np.triu(np.outer(v, w))
    return upper + np.triu(upper, 1).T


def sylvester_transform(v) -> np.ndarray:
    """Upper bidiagonal ``S`` with unit diagonal and ``S[i, i+1] = -v_i / v_{i+1}``.

    ``S M S^T`` is diagonal for ``M = symmetrized_rank_one(v, w)``.
    """
    v = np.asarray(v, dtype=float)
    S = np.eye(v.size)
    idx = np.arange(v.size - 1)
    S[idx, idx + 1] = -v[:-1] / v[1:]
    return S


class LemmaBounds(NamedTuple):
    lower: float
    upper: float
    inertia: tuple[int, int, int]
    sms_diagonal: np.ndarray


def lemma_bounds(v, w) -> LemmaBounds:
    """Trace-norm bracket and predicted inertia of ``symmetrized_rank_one(v, w)``.

    Requires positive ``v``, ``w`` with ``v_i / v_{i+1} > w_i / w_{i+1}``.
    The bracket is ``2|v||w| -+ v.w``; the predicted inertia is one positive
    and ``n - 1`` negative eigenvalues, read off from the diagonal of
    ``S M S^T``.
    """
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != w.shape or v.ndim != 1 or v.size == 0:
        raise ValueError("v and w must be non-empty vectors of equal length")
    bad = np.flatnonzero((v <= 0) | (w <= 0))
    if bad.size:
        raise ValueError(f"components must be positive; first violation at index {bad[0]}")
    # cross-multiplied form of v_i/v_{i+1} > w_i/w_{i+1}
    bad = np.flatnonzero(v[:-1] * w[1:] <= v[1:] * w[:-1])
    if bad.size:
        raise ValueError(f"ratio condition v_i/v_(i+1) > w_i/w_(i+1) fails at index {bad[0]}")
    nv, nw, vw = float(np.linalg.norm(v)), float(np.linalg.norm(w)), float(np.dot(v, w))
    diag = np.empty(v.size)
    diag[:-1] = v[:-1] / v[1:] * (v[1:] * w[:-1] - v[:-1] * w[1:])
    diag[-1] = v[-1] * w[-1]
    return LemmaBounds(2 * nv * nw - vw, 2 * nv * nw + vw, (1, 0, v.size - 1), diag)


# --- negative dual --------------------------------------------------------

@dataclass(frozen=True)
class NegativeDualWitness:
    """``R = P - Q`` with ``P``, ``Q`` the positive and negative spectral parts of ``R``."""

    R: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    v: np.ndarray
    w: np.ndarray

    @property
    def n(self) -> int:
        return int(self.R.shape[0])

    @property
    def objective(self) -> float:
        return float(np.trace(self.P) + np.trace(self.Q))

    def diag_sums(self) -> np.ndarray:
        return np.array([diag_sum(self.R, i) for i in range(self.n)])


def negative_dual(n: int) -> NegativeDualWitness:
    """Feasible point of the negative-weight dual built from ``xi``.

    ``R`` is :func:`symmetrized_rank_one` of ``v = (xi_0, .., xi_{n-1})`` and
    its reversal; every superdiagonal of ``R`` sums to 1.
    """
    _check_n(n)
    v = xi_table(n - 1).values.copy()
    w = v[::-1].copy()
    R = symmetrized_rank_one(v, w)
    lam, V = eig_sym(R)
    cut = 1e-12 * max(abs(lam[0]), abs(lam[-1]))
    pos, neg = lam > cut, lam < -cut
    P = (V[:, pos] * lam[pos]) @ V[:, pos].T
    Q = (V[:, neg] * -lam[neg]) @ V[:, neg].T
    for a in (R, P, Q, v, w):
        a.setflags(write=False)
    return NegativeDualWitness(R, P, Q, v, w)


def madv_upper_bound(n: int) -> float:
    """Trace norm of the :func:`negative_dual` matrix: an upper bound on MADV."""
    return trace_norm(negative_dual(n).R)


def asymptotic_estimate(n: int) -> float:
    """``(2/pi)(ln n + gamma_EM + ln 8)``."""
    _check_n(n)
    return 2.0 / math.pi * (math.log(n) + EULER_GAMMA + math.log(8.0))


# --- empirical rank-two form of the optimal negative dual ------------------

class Ansatz(NamedTuple):
    theta: np.ndarray
    r: np.ndarray
    p: np.ndarray
    q: np.ndarray
    residuals: np.ndarray  # |Tr_i(p p^T - q q^T) - 1|, i = 0..n-1

    @property
    def objective(self) -> float:
        return float(np.dot(self.p, self.p) + np.dot(self.q, self.q))


def ansatz_negative_primal(n: int) -> Ansatz:
    """Approximate rank-two ``(p, q)`` for the optimal negative-weight dual.

    Angles ``theta_i = pi/(2n-1) * ((n+1)/2 - i)``; radii squared
    ``csc(1 / ((n+1) xi_{i-1}^2)) / (n+1)`` on the first ``ceil(n/2)``
    indices, mirrored on the rest. The radii are only approximate, so the
    returned residuals are diagnostic and carry no feasibility guarantee.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    i = np.arange(1, n + 1)
    theta = math.pi / (2 * n - 1) * ((n + 1) / 2 - i)
    h = (n + 1) // 2
    x = xi_table(h - 1).values
    r2_half = 1.0 / ((n + 1) * np.sin(1.0 / ((n + 1) * x[:h] ** 2)))
    r2 = np.concatenate((r2_half, r2_half[: n - h][::-1]))
    r = np.sqrt(r2)
    p, q = r * np.cos(theta), r * np.sin(theta)
    D = np.outer(p, p) - np.outer(q, q)
    residuals = np.array([abs(diag_sum(D, k) - 1.0) for k in range(n)])
    return Ansatz(theta, r, p, q, residuals)
