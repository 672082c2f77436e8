"""Dense symmetric matrices: builders, eigendecomposition, norms, inertia.

Matrices are plain ``numpy`` arrays. Builders return read-only arrays so the
symmetry established at construction cannot be broken afterwards.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

__all__ = [
    "Spectrum",
    "sym_toeplitz",
    "half_hilbert",
    "eig_sym",
    "jacobi_eigh",
    "spectral_norm",
    "trace_norm",
    "diag_sum",
    "inertia",
    "DEFAULT_ZERO_TOL",
]

DEFAULT_ZERO_TOL = 1e-9


class Spectrum(NamedTuple):
    """Eigenvalues in ascending order; ``eigenvectors[:, k]`` pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def sym_toeplitz(first_row) -> np.ndarray:
    """Symmetric Toeplitz matrix with ``T[i, j] = first_row[|i - j|]``.

    For an adversary weight vector ``gamma`` pass ``gamma[::-1]`` so that the
    diagonal carries ``gamma_n`` and the corner carries ``gamma_1``.
    """
    r = np.asarray(first_row, dtype=float)
    if r.ndim != 1 or r.size == 0:
        raise ValueError("first_row must be a non-empty 1-d sequence")
    idx = np.arange(r.size)
    return _frozen(r[np.abs(idx[:, None] - idx[None, :])])


def half_hilbert(m: int) -> np.ndarray:
    """Hankel matrix with ``1/(i+j+1)`` on and above the anti-diagonal, 0 below (0-based)."""
    if m < 1:
        raise ValueError(f"order must be >= 1, got {m}")
    s = np.add.outer(np.arange(m), np.arange(m)) + 1.0
    return _frozen(np.where(s <= m, 1.0 / s, 0.0))


def _check_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def jacobi_eigh(M, tol: float = 1e-13, max_sweeps: int = 60) -> Spectrum:
    """Cyclic Jacobi eigensolver.

    Sweeps all ``(p, q)`` pairs in row order until the off-diagonal Frobenius
    mass is at most ``tol * ||M||_F``. Intended for orders up to a few
    hundred; it is the independent cross-check for :func:`eig_sym`.
    """
    A = np.array(_check_square(M), dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    scale = np.linalg.norm(A)
    if n == 1 or scale == 0.0:
        return Spectrum(np.diag(A).copy(), V)

    def off(a):
        return math.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))

    for _ in range(max_sweeps):
        if off(A) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                diff = A[q, q] - A[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    t = apq / diff  # small-angle limit, avoids overflow in theta
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the rotation in the (p, q) plane
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], V[:, order])


def eig_sym(M, want_vectors: bool = True, method: str = "lapack") -> Spectrum:
    """Full spectrum of a symmetric matrix, eigenvalues ascending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` runs
    :func:`jacobi_eigh`. Only the lower triangle is read by LAPACK, which is
    harmless because every builder here produces exactly symmetric arrays.
    """
    M = _check_square(M)
    if method == "jacobi":
        spec = jacobi_eigh(M)
        return spec if want_vectors else Spectrum(spec.eigenvalues)
    if method != "lapack":
        raise ValueError(f"unknown method {method!r}")
    if want_vectors:
        w, V = np.linalg.eigh(M)
        return Spectrum(w, V)
    return Spectrum(np.linalg.eigvalsh(M))


def spectral_norm(M) -> float:
    """Largest absolute eigenvalue of a symmetric matrix."""
    w = eig_sym(M, want_vectors=False).eigenvalues
    return float(max(abs(w[0]), abs(w[-1])))


def trace_norm(M) -> float:
    """Sum of absolute eigenvalues of a symmetric matrix."""
    return float(np.sum(np.abs(eig_sym(M, want_vectors=False).eigenvalues)))


def diag_sum(M, i: int) -> float:
    """Sum of the ``i``-th superdiagonal; ``i = 0`` is the trace."""
    M = _check_square(M)
    n = M.shape[0]
    if not 0 <= i < n:
        raise IndexError(f"diagonal offset {i} out of range for order {n}")
    return float(np.trace(M, offset=i))


def inertia(M, zero_tol: float = DEFAULT_ZERO_TOL) -> tuple[int, int, int]:
    """Counts ``(n_pos, n_zero, n_neg)`` of eigenvalues.

    An eigenvalue counts as zero when its magnitude is at most
    ``zero_tol * max(1, ||M||)``.
    """
    if zero_tol <= 0:
        raise ValueError("zero_tol must be positive")
    w = eig_sym(M, want_vectors=False).eigenvalues
    cut = zero_tol * max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    n_pos = int(np.sum(w > cut))
    n_neg = int(np.sum(w < -cut))
    return n_pos, int(w.size) - n_pos - n_neg, n_neg
