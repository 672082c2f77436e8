import math

import numpy as np
import pytest

from oracles import adv_value_exact, harmonic_exact, optimal_weights_exact, xi_exact
from ospadv.constructions import (
    EULER_GAMMA,
    adv_value,
    ansatz_negative_primal,
    asymptotic_estimate,
    dual_witness,
    eigen_condition_residuals,
    hns_value,
    hns_weights,
    lemma_bounds,
    madv_upper_bound,
    negative_dual,
    optimal_weights,
    principal_vector,
    sylvester_transform,
    symmetrized_rank_one,
    verify_eigen_condition,
)
from ospadv.linalg import diag_sum, eig_sym, half_hilbert, inertia, spectral_norm, trace_norm
from ospadv.ospmodel import adv_objective

N_SWEEP = range(1, 513)


# --- weight schemes ---------------------------------------------------------

def test_hns_examples():
    np.testing.assert_allclose(hns_weights(4).gamma, [1 / math.pi, 1 / (2 * math.pi), 0, 0], rtol=1e-15)
    np.testing.assert_array_equal(hns_weights(1).gamma, [0.0])
    assert adv_objective(hns_weights(1)) == 0
    assert adv_objective(hns_weights(7)) == pytest.approx(2 / math.pi * 11 / 6, rel=1e-14)


@pytest.mark.parametrize("n", [2, 9, 100, 1024])
def test_hns_value_is_harmonic(n):
    expected = 2 / math.pi * float(harmonic_exact(n // 2))
    assert abs(adv_objective(hns_weights(n)) - expected) <= 1e-12
    assert abs(hns_value(n) - expected) <= 1e-12


def test_hns_block_norm_bounded():
    for n in range(1, 513):
        T = hns_weights(n).toeplitz()
        s = spectral_norm(T)
        assert s <= 1 + 1e-9
        if n >= 2:
            assert s == pytest.approx(spectral_norm(half_hilbert(n // 2)) / math.pi, abs=1e-12)


@pytest.mark.parametrize(
    "n, expected",
    [(4, [0.75, 0.5, 0, 0]), (3, [0.875, 0.25, 0]), (2, [1, 0]), (1, [1])],
)
def test_optimal_weight_examples(n, expected):
    np.testing.assert_allclose(optimal_weights(n).gamma, expected, atol=1e-15)


def test_optimal_weights_n6_rise():
    g = optimal_weights(6).gamma
    assert g[1] == pytest.approx(0.3125, abs=1e-15)
    assert g[2] == pytest.approx(0.375, abs=1e-15)
    assert g[2] > g[1]


@pytest.mark.parametrize("n", range(1, 21))
def test_optimal_weights_match_exact(n):
    exact = [float(x) for x in optimal_weights_exact(n)]
    np.testing.assert_allclose(optimal_weights(n).gamma, exact, rtol=1e-13, atol=1e-16)


def test_optimal_weights_sweep():
    for n in N_SWEEP:
        w = optimal_weights(n)
        assert np.min(w.gamma) >= -1e-15
        assert abs(adv_objective(w) - adv_value(n)) <= 1e-11
        assert abs(spectral_norm(w.toeplitz()) - 1) <= 1e-9


@pytest.mark.parametrize("n, expected", [(1, 1.0), (2, 2.0), (3, 2.25), (4, 2.5)])
def test_adv_value_examples(n, expected):
    assert adv_value(n) == expected


@pytest.mark.parametrize("n", [5, 10, 33, 64])
def test_adv_value_exact(n):
    assert adv_value(n) == pytest.approx(float(adv_value_exact(n)), rel=1e-14)


# --- eigenvectors -------------------------------------------------------------

@pytest.mark.parametrize("n, expected", [(4, [1, 0.5, 0.5, 1]), (3, [1, 0.5, 1]), (1, [1]), (5, [1, 0.5, 0.375, 0.5, 1])])
def test_principal_vector(n, expected):
    np.testing.assert_array_equal(principal_vector(n), expected)


def test_eigen_condition_small():
    assert verify_eigen_condition(4) <= 1e-13
    assert verify_eigen_condition(3) <= 1e-13
    assert verify_eigen_condition(64) <= 1e-11
    # hand checks of single rows
    T, u = optimal_weights(4).toeplitz(), principal_vector(4)
    assert (T @ u)[0] == pytest.approx(0.5 * 0.5 + 0.75 * 1 + 0 + 0)
    T, u = optimal_weights(3).toeplitz(), principal_vector(3)
    assert (T @ u)[1] == pytest.approx(0.5)


def test_eigen_condition_sweep():
    for n in N_SWEEP:
        r = eigen_condition_residuals(n)
        assert r.max <= 1e-10, (n, r)


def test_odd_middle_identity_is_exercised():
    r = eigen_condition_residuals(7)
    assert r.middle_residual <= 1e-15
    # A_{m+1}(m) = xi_0 xi_m exactly in rationals
    assert float(xi_exact(0) * xi_exact(3)) == pytest.approx(0.3125)


@pytest.mark.parametrize("n", [3, 5, 9, 17, 33, 65, 129])
def test_odd_principal_eigenvector_unique(n):
    T = optimal_weights(n).toeplitz()
    # irreducible: the support graph is connected
    adj = T > 0
    seen, stack = {0}, [0]
    while stack:
        k = stack.pop()
        for j in np.flatnonzero(adj[k]):
            if j not in seen:
                seen.add(int(j))
                stack.append(int(j))
    assert len(seen) == n
    lam, V = eig_sym(T)
    assert lam[-1] == pytest.approx(1.0, abs=1e-12)
    assert lam[-2] < 1 - 1e-8
    v = V[:, -1] * np.sign(V[0, -1])
    u = principal_vector(n)
    np.testing.assert_allclose(v / v[0], u / u[0], atol=1e-8)


@pytest.mark.parametrize("n", [2, 4, 8, 16, 64])
def test_even_case_norm_one_without_uniqueness(n):
    T = optimal_weights(n).toeplitz()
    lam = eig_sym(T, want_vectors=False).eigenvalues
    assert lam[-1] == pytest.approx(1.0, abs=1e-12)
    u = principal_vector(n)
    assert np.max(np.abs(T @ u - u)) <= 1e-13


# --- non-negative dual --------------------------------------------------------

def test_dual_witness_examples():
    d4 = dual_witness(4)
    assert d4.trace == 2.5
    np.testing.assert_allclose(d4.diag_sums(), [2.5, 1.25, 1, 1])
    d3 = dual_witness(3)
    assert d3.trace == 2.25 and diag_sum(d3.P, 2) == 1
    d1 = dual_witness(1)
    np.testing.assert_array_equal(d1.P, [[1.0]])


def test_dual_witness_sweep():
    for n in N_SWEEP:
        d = dual_witness(n)
        np.testing.assert_array_equal(d.u, d.u[::-1])
        assert abs(d.trace - adv_value(n)) <= 1e-11
        sums = d.diag_sums()
        assert np.min(sums) >= 1 - 1e-11
        tail = sums[n // 2 + 1:]
        assert np.all(np.abs(tail - 1) <= 1e-11)


# --- Lemma machinery ------------------------------------------------------

def test_lemma_small_example():
    lb = lemma_bounds([1, 0.5], [0.5, 1])
    assert (lb.lower, lb.upper) == pytest.approx((1.5, 3.5))
    np.testing.assert_allclose(lb.sms_diagonal, [-1.5, 0.5])
    assert lb.inertia == (1, 0, 1)
    M = symmetrized_rank_one([1, 0.5], [0.5, 1])
    assert trace_norm(M) == pytest.approx(2)
    assert inertia(M) == lb.inertia


def test_lemma_degenerate_single_entry():
    lb = lemma_bounds([1.0], [1.0])
    assert (lb.lower, lb.upper) == (1.0, 3.0)
    assert trace_norm(symmetrized_rank_one([1.0], [1.0])) == 1.0


@pytest.mark.parametrize("n", [2, 4, 7, 20])
def test_sylvester_transform_diagonalizes(n):
    rng = np.random.default_rng(n)
    # v shrinks faster than w at every step, so the ratio condition holds
    v = np.cumprod(rng.uniform(0.6, 0.8, n))
    w = np.cumprod(rng.uniform(0.85, 1.2, n))
    lb = lemma_bounds(v, w)
    M = symmetrized_rank_one(v, w)
    S = sylvester_transform(v)
    D = S @ M @ S.T
    np.testing.assert_allclose(D, np.diag(lb.sms_diagonal), atol=1e-12 * np.abs(M).max())
    assert inertia(M) == lb.inertia
    tn = trace_norm(M)
    assert lb.lower - 1e-12 <= tn <= lb.upper + 1e-12


def test_lemma_rejects_bad_input():
    with pytest.raises(ValueError, match="index 1"):
        lemma_bounds([2, 1, 1], [1, 1, 1])
    with pytest.raises(ValueError, match="positive"):
        lemma_bounds([1, 0], [1, 1])
    with pytest.raises(ValueError):
        lemma_bounds([1, 2], [1])


# --- negative dual --------------------------------------------------------

def test_negative_dual_n2():
    nd = negative_dual(2)
    np.testing.assert_allclose(nd.R, [[0.5, 1], [1, 0.5]])
    np.testing.assert_allclose(nd.diag_sums(), [1, 1])
    assert trace_norm(nd.R) == pytest.approx(2)
    assert madv_upper_bound(2) == pytest.approx(2)
    assert 2 <= adv_value(4) + 1


def test_negative_dual_n1():
    nd = negative_dual(1)
    np.testing.assert_array_equal(nd.R, [[1.0]])
    assert madv_upper_bound(1) == 1.0


def test_negative_dual_matches_index_formula():
    # R[i, j] = xi_{i-1} xi_{n-j} for i <= j (1-based), mirrored
    n = 6
    R = negative_dual(n).R
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            assert R[i - 1, j - 1] == pytest.approx(float(xi_exact(i - 1) * xi_exact(n - j)), rel=1e-15)


def test_negative_dual_n8():
    nd = negative_dual(8)
    assert np.max(np.abs(nd.diag_sums() - 1)) <= 1e-12
    assert inertia(nd.R) == (1, 0, 7)


def test_negative_dual_sweep():
    for n in range(1, 257):
        nd = negative_dual(n)
        assert np.max(np.abs(nd.diag_sums() - 1)) <= 1e-11
        assert inertia(nd.R) == (1, 0, n - 1)
        tn = trace_norm(nd.R)
        lb = lemma_bounds(nd.v, nd.w)
        assert lb.lower - 1e-9 <= tn <= lb.upper + 1e-9
        assert tn <= adv_value(2 * n) + 1 + 1e-9
        assert tn >= adv_value(n) - 1e-9
        assert np.max(np.abs(nd.R - (nd.P - nd.Q))) <= 1e-10
        assert eig_sym(nd.P, want_vectors=False).eigenvalues[0] >= -1e-9
        assert eig_sym(nd.Q, want_vectors=False).eigenvalues[0] >= -1e-9
        assert abs(nd.objective - tn) <= 1e-9


# --- asymptotics ----------------------------------------------------------

def test_asymptotic_examples():
    # (2/pi)(ln 4 + 0.5772156649 + ln 8) and (2/pi)(0.5772156649 + ln 8)
    assert asymptotic_estimate(4) == pytest.approx(2.5738229067, abs=1e-9)
    assert asymptotic_estimate(1) == pytest.approx(2 / math.pi * (EULER_GAMMA + math.log(8)))
    assert asymptotic_estimate(1) == pytest.approx(1.6912805061, abs=1e-9)


def test_error_scales_like_one_over_n():
    e256 = abs(adv_value(256) - asymptotic_estimate(256))
    e512 = abs(adv_value(512) - asymptotic_estimate(512))
    assert 1.6 <= e256 / e512 <= 2.4


def test_gap_to_hns_converges():
    target = 2 / math.pi * math.log(16)
    assert target == pytest.approx(1.7650848012, abs=1e-9)
    gaps = [adv_value(n) - hns_value(n) for n in range(2, 1025, 2)]
    assert np.all(np.diff(gaps) > 0)
    assert abs(gaps[-1] - target) <= 0.01
    assert all(hns_value(n) < adv_value(n) for n in range(1, 200))


# --- rank-two ansatz --------------------------------------------------------

def test_ansatz_angles():
    a = ansatz_negative_primal(16)
    assert a.theta[0] == pytest.approx(7.5 * math.pi / 31, rel=1e-15)
    for n in (2, 5, 16, 33):
        t = ansatz_negative_primal(n).theta
        assert np.all(np.diff(t) < 0)
        np.testing.assert_allclose(t, -t[::-1], atol=1e-15)


def test_ansatz_is_diagnostic():
    a = ansatz_negative_primal(16)
    np.testing.assert_allclose(a.r, a.r[::-1], rtol=1e-15)
    assert a.residuals.shape == (16,)
    assert np.all(np.isfinite(a.residuals))
    with pytest.raises(ValueError):
        ansatz_negative_primal(1)
