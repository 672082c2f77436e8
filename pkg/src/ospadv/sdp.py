"""Barrier solver for the reduced adversary programs and dual checks.

The primal is::

    maximize    gamma_n + 2 * (gamma_1 + ... + gamma_{n-1})
    subject to  -I <= Toeplitz(gamma_n, ..., gamma_1) <= I
                gamma >= 0                                  (non-negative mode)

It is solved by following the central path of the log-det barrier with
damped Newton steps. Every iterate is strictly feasible, and at the end of
each centering phase ``mu * (I -+ T)^{-1}`` is a near-feasible dual point
whose gap to the primal is the number of barrier terms times ``mu``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .linalg import diag_sum, eig_sym, spectral_norm
from .ospmodel import AdversaryWeights, adv_objective

__all__ = [
    "SolverConfig",
    "SdpSolution",
    "SolverError",
    "DualReport",
    "InconsistentCertificate",
    "objective_vector",
    "toeplitz_basis",
    "solve_primal",
    "check_dual_feasibility",
    "certify",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    feas_tol: float = 1e-8
    gap_tol: float = 1e-7
    max_outer: int = 200
    barrier_shrink: float = 0.2
    newton_tol: float = 1e-10
    max_newton: int = 200

    def __post_init__(self):
        for name in ("feas_tol", "gap_tol", "newton_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.barrier_shrink < 1:
            raise ValueError("barrier_shrink must lie in (0, 1)")
        if self.max_outer < 1 or self.max_newton < 1:
            raise ValueError("iteration limits must be >= 1")


@dataclass
class SdpSolution:
    weights: AdversaryWeights
    value: float
    gap: float
    max_norm_violation: float
    sign_violation: float
    iterations: int
    nonneg: bool
    converged: bool = True
    newton_steps: int = 0
    # mu (I - T)^{-1} and mu (I + T)^{-1} at the last centred point
    dual_p: np.ndarray | None = field(default=None, repr=False)
    dual_q: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.weights.n


class SolverError(RuntimeError):
    """The barrier method did not reach the requested gap.

    ``solution`` holds the best (feasible) iterate and its residuals.
    """

    def __init__(self, message: str, solution: SdpSolution):
        super().__init__(message)
        self.solution = solution


class InconsistentCertificate(ValueError):
    """Dual objective below the primal value by more than the tolerance."""


def objective_vector(n: int) -> np.ndarray:
    c = np.full(n, 2.0)
    c[-1] = 1.0
    return c


def toeplitz_basis(n: int) -> np.ndarray:
    """Stack ``E[k]`` with ``T(gamma) = sum_k gamma[k] E[k]``."""
    idx = np.arange(n)
    dist = np.abs(idx[:, None] - idx[None, :])
    # gamma_{k+1} sits at distance n - 1 - k
    return (dist[None, :, :] == (n - 1 - idx)[:, None, None]).astype(float)


def _inv_logdet(M: np.ndarray):
    """Inverse and log-determinant of a positive definite ``M``, or ``None``."""
    try:
        L = np.linalg.cholesky(M)
    except np.linalg.LinAlgError:
        return None
    Linv = np.linalg.inv(L)
    return Linv.T @ Linv, 2.0 * float(np.sum(np.log(np.diag(L))))


class _Barrier:
    def __init__(self, n: int, nonneg: bool):
        self.n = n
        self.nonneg = nonneg
        self.E = toeplitz_basis(n)
        self.c = objective_vector(n)
        self.eye = np.eye(n)
        self.nu = 2 * n + (n if nonneg else 0)

    def T(self, g):
        return np.tensordot(g, self.E, axes=1)

    def value(self, g, mu):
        """Barrier objective ``-c.g / mu + phi(g)``; ``inf`` outside the domain."""
        if self.nonneg and np.any(g <= 0):
            return np.inf, None
        T = self.T(g)
        lo = _inv_logdet(self.eye - T)
        hi = _inv_logdet(self.eye + T) if lo is not None else None
        if hi is None:
            return np.inf, None
        f = -self.c @ g / mu - lo[1] - hi[1]
        if self.nonneg:
            f -= float(np.sum(np.log(g)))
        return f, (lo[0], hi[0])

    def derivatives(self, g, mu, inverses):
        Y1, Y2 = inverses
        E = self.E
        grad = -self.c / mu + np.einsum("ij,kij->k", Y1, E) - np.einsum("ij,kij->k", Y2, E)
        n = self.n
        A1 = np.matmul(Y1[None], E).reshape(n, n * n)
        A2 = np.matmul(Y2[None], E).reshape(n, n * n)
        # tr(Y E_k Y E_l) with E symmetric and Y symmetric
        A1t = np.matmul(E, Y1[None]).reshape(n, n * n)
        A2t = np.matmul(E, Y2[None]).reshape(n, n * n)
        H = A1 @ A1t.T + A2 @ A2t.T
        if self.nonneg:
            grad -= 1.0 / g
            H[np.diag_indices(n)] += 1.0 / g**2
        return grad, 0.5 * (H + H.T)


def _newton_direction(H, grad):
    try:
        L = np.linalg.cholesky(H)
        return -np.linalg.solve(L.T, np.linalg.solve(L, grad))
    except np.linalg.LinAlgError:
        return -np.linalg.lstsq(H, grad, rcond=None)[0]


def _center(bar: _Barrier, g, mu, cfg: SolverConfig):
    """Damped Newton minimisation of the barrier objective at fixed ``mu``.

    The barrier is self-concordant, so the step ``1 / (1 + lambda)`` (with
    ``lambda`` the Newton decrement) stays feasible and decreases the
    objective without any function comparison; comparisons are unreliable
    once ``c.g / mu`` is large. Full steps are taken once ``lambda < 1/4``.
    """
    inv = bar.value(g, mu)[1]
    steps = 0
    decrement = np.inf
    while steps < cfg.max_newton:
        grad, H = bar.derivatives(g, mu, inv)
        d = _newton_direction(H, grad)
        decrement = float(-grad @ d)
        if decrement / 2.0 <= cfg.newton_tol:
            break
        lam = np.sqrt(max(decrement, 0.0))
        t = 1.0 if lam < 0.25 else 1.0 / (1.0 + lam)
        while True:
            g_new = g + t * d
            inv_new = bar.value(g_new, mu)[1]
            if inv_new is not None:
                break
            # only reachable through rounding right at the boundary
            t *= 0.5
            if t < 1e-14:
                return g, inv, steps, decrement
        g, inv = g_new, inv_new
        steps += 1
    return g, inv, steps, decrement


def _package(bar, g, mu, inv, outer, steps, converged):
    T = bar.T(g)
    norm = spectral_norm(T)
    scaled = g / max(1.0, norm)
    w = AdversaryWeights(scaled)
    sign_violation = max(0.0, -float(np.min(scaled))) if bar.nonneg else 0.0
    return SdpSolution(
        weights=w,
        value=adv_objective(w),
        gap=bar.nu * mu,
        max_norm_violation=max(0.0, spectral_norm(w.toeplitz()) - 1.0),
        sign_violation=sign_violation,
        iterations=outer,
        nonneg=bar.nonneg,
        converged=converged,
        newton_steps=steps,
        dual_p=mu * inv[0],
        dual_q=mu * inv[1],
    )


def solve_primal(n: int, nonneg: bool = True, config: SolverConfig | None = None) -> SdpSolution:
    """Maximise the adversary objective over weights with ``||T|| <= 1``.

    Stops once the barrier gap falls below ``min(gap_tol, feas_tol)``, so the
    reported value is also within ``feas_tol`` of the optimum. Raises
    :class:`SolverError` (carrying the last centred iterate) when
    ``max_outer`` reductions are not enough.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cfg = config or SolverConfig()
    bar = _Barrier(n, nonneg)
    # all-equal weights give T = J / (2n), whose norm is 1/2
    g = np.full(n, 1.0 / (2 * n))
    mu = 1.0
    steps = 0
    inv = bar.value(g, mu)[1]
    # the reported value must sit within feas_tol of the optimum as well
    target = min(cfg.gap_tol, cfg.feas_tol)
    for outer in range(1, cfg.max_outer + 1):
        g, inv, k, dec = _center(bar, g, mu, cfg)
        steps += k
        log.debug("n=%d outer=%d mu=%.3e newton=%d decrement=%.3e", n, outer, mu, k, dec)
        if bar.nu * mu <= target:
            return _package(bar, g, mu, inv, outer, steps, True)
        if outer < cfg.max_outer:
            mu *= cfg.barrier_shrink
    sol = _package(bar, g, mu, inv, cfg.max_outer, steps, False)
    raise SolverError(
        f"barrier method stopped after {cfg.max_outer} reductions with gap {sol.gap:.3e} "
        f"> {target:.3e} (value {sol.value:.12g}, norm violation {sol.max_norm_violation:.3e})",
        sol,
    )


@dataclass
class DualReport:
    mode: str
    feasible: bool
    objective: float
    min_eigenvalue: float
    diag_sums: np.ndarray
    diag_residual: float  # worst violation of the diagonal-sum constraints
    tol: float

    def lines(self):
        mark = "PASS" if self.feasible else "FAIL"
        yield (
            f"dual[{self.mode}] objective={self.objective:.12g} "
            f"min_eig={self.min_eigenvalue:.3e} diag_residual={self.diag_residual:.3e} {mark}"
        )


def check_dual_feasibility(P, Q=None, mode: str = "nonneg", tol: float = 1e-9) -> DualReport:
    """Check a candidate for the non-negative or the negative-weight dual.

    ``nonneg``: ``P >= 0`` and every superdiagonal sum of ``P`` at least 1;
    objective ``tr P``. ``negative``: ``P, Q >= 0`` and every superdiagonal
    sum of ``P - Q`` equal to 1; objective ``tr(P + Q)``. A feasible
    candidate's objective bounds the matching primal from above.
    """
    P = np.asarray(P, dtype=float)
    if mode not in ("nonneg", "negative"):
        raise ValueError(f"mode must be 'nonneg' or 'negative', got {mode!r}")
    if Q is not None:
        Q = np.asarray(Q, dtype=float)
        if Q.shape != P.shape:
            raise ValueError(f"P and Q shapes differ: {P.shape} vs {Q.shape}")
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError(f"P must be square, got shape {P.shape}")
    n = P.shape[0]
    if mode == "nonneg":
        if Q is not None:
            raise ValueError("non-negative mode takes a single matrix")
        R = P
        mats = (P,)
    else:
        Qm = np.zeros_like(P) if Q is None else Q
        R = P - Qm
        mats = (P, Qm)
    min_eig = min(float(eig_sym(M, want_vectors=False).eigenvalues[0]) for M in mats)
    sums = np.array([diag_sum(R, i) for i in range(n)])
    if mode == "nonneg":
        diag_res = max(0.0, float(np.max(1.0 - sums)))
    else:
        diag_res = float(np.max(np.abs(sums - 1.0)))
    objective = float(sum(np.trace(M) for M in mats))
    feasible = min_eig >= -tol and diag_res <= tol
    return DualReport(mode, feasible, objective, min_eig, sums, diag_res, tol)


def certify(primal: SdpSolution, dual_objective: float, feas_tol: float = 1e-8) -> float:
    """Duality gap ``dual_objective - primal.value``.

    The dual objective must come from a witness already verified feasible at
    the same ``n`` and mode. A gap below ``-feas_tol`` contradicts weak
    duality and raises :class:`InconsistentCertificate`.
    """
    gap = float(dual_objective) - primal.value
    if gap < -feas_tol:
        raise InconsistentCertificate(
            f"dual objective {dual_objective:.12g} is below primal value "
            f"{primal.value:.12g} by {-gap:.3e}"
        )
    return gap
