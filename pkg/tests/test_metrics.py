import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from irsbd.channel import ChannelSet
from irsbd.errors import NumericalError
from irsbd.irs import PhaseProfile, cascade
from irsbd.metrics import (LinkMetrics, link_metrics, sinr_ue1, sinr_ue2, spectral_efficiency,
                           sum_se)
from irsbd.txrx import (MethodId, CombinerSet, build_combiners, build_precoders,
                        effective_channels)

import oracles
from conftest import crandn

NS = 2


def small_instance(rng, M=3, N=3, P=3, Q=3):
    J, H2 = crandn(rng, N, M), crandn(rng, P, M)
    G1, G2 = crandn(rng, Q, N), crandn(rng, P, N)
    ph = PhaseProfile(rng.uniform(-np.pi, np.pi, N))
    F1, F2 = crandn(rng, M, NS), crandn(rng, M, NS)
    W1, W2 = crandn(rng, Q, NS), crandn(rng, P, NS)
    return J, H2, G1, G2, ph, F1, F2, W1, W2


def test_interference_free_zf_white_noise():
    # W^H h F = I with orthonormal W, no interferer
    rng = np.random.default_rng(1)
    W, _ = np.linalg.qr(crandn(rng, 4, NS))
    h = W @ np.eye(NS, 4)          # h F = W for F = first NS unit vectors
    F1 = np.eye(4, NS)
    var = 1e-3
    t = sinr_ue1(h, F1, np.zeros((4, NS)), W, var)
    np.testing.assert_allclose(t.signal, np.eye(NS), atol=1e-12)
    assert t.gamma == pytest.approx(NS / var, rel=1e-12)
    assert sinr_ue1(h, F1, np.zeros((4, NS)), W, var, "white").gamma == pytest.approx(NS / var)


def test_gamma_linear_in_signal_power_at_fixed_combiner(rng):
    J, H2, G1, G2, ph, F1, F2, W1, W2 = small_instance(rng)
    h1 = cascade(G1, ph, J)
    z = np.zeros_like(F2)
    g = sinr_ue1(h1, F1, z, W1, 0.1).gamma
    assert sinr_ue1(h1, 2 * F1, z, W1, 0.1).gamma == pytest.approx(4 * g, rel=1e-12)


@pytest.mark.parametrize("model", ["combined", "white"])
def test_brute_force_equivalence(model):
    rng = np.random.default_rng(99)
    for _ in range(100):
        J, H2, G1, G2, ph, F1, F2, W1, W2 = small_instance(rng)
        var = 10 ** rng.uniform(-2, 1)
        g1, X1 = oracles.gamma1(G1, list(ph.coefficients), J, F1, F2, W1, var, model)
        g2, X2 = oracles.gamma2(H2, G2, list(ph.coefficients), J, F1, F2, W2, var, model)
        t1 = sinr_ue1(cascade(G1, ph, J), F1, F2, W1, var, model)
        t2 = sinr_ue2(H2, cascade(G2, ph, J), F1, F2, W2, var, model)
        assert t1.gamma == pytest.approx(g1, rel=1e-10)
        assert t2.gamma == pytest.approx(g2, rel=1e-10)
        np.testing.assert_allclose(t1.matrix, X1, rtol=1e-10, atol=1e-10 * abs(g1))
        se = math.log2((oracles.det2(oracles.add(oracles.eye2(), X2))).real)
        assert spectral_efficiency(t2.matrix) == pytest.approx(se, rel=1e-10)


def test_ue2_reduces_to_single_user(rng):
    H2 = crandn(rng, 4, 6)
    F2 = crandn(rng, 6, NS)
    W2 = crandn(rng, 4, NS)
    t = sinr_ue2(H2, np.zeros((4, 6)), np.zeros((6, NS)), F2, W2, 0.5)
    assert t.interference_power == 0
    x = W2.conj().T @ H2 @ F2
    expect = np.trace(x @ x.conj().T @ np.linalg.inv(0.5 * W2.conj().T @ W2)).real
    assert t.gamma == pytest.approx(expect, rel=1e-12)
    assert sinr_ue2(H2, None, np.zeros((6, NS)), F2, W2, 0.5).gamma == pytest.approx(t.gamma)


def test_fib_ue2_interference_negligible(scenarios, cfg):
    for ch, ph, _ in scenarios[:30]:
        p = build_precoders(MethodId.FIB, ch, ph, NS, 1.0)
        w = build_combiners(ch, ph, p, MethodId.FIB)
        t = sinr_ue2(ch.H2, cascade(ch.G2, ph, ch.J), p.F1, p.F2, w.W2, cfg.noise_var2)
        assert t.interference_power <= 1e-12 * t.signal_power
        t1 = sinr_ue1(cascade(ch.G1, ph, ch.J), p.F1, p.F2, w.W1, cfg.noise_var1)
        assert t1.interference_power <= 1e-16 * t1.signal_power


def test_se_examples():
    assert spectral_efficiency(np.zeros((2, 2))) == 0.0
    assert spectral_efficiency(np.eye(2)) == pytest.approx(2.0)
    assert spectral_efficiency(np.diag([3.0, 0.0])) == pytest.approx(2.0)
    assert spectral_efficiency(np.diag([3.0, 0.0]), "scalar") == pytest.approx(2.0)
    assert spectral_efficiency(np.eye(2), "scalar") == pytest.approx(math.log2(3))


def test_se_rejects_indefinite():
    with pytest.raises(NumericalError):
        spectral_efficiency(np.diag([-2.0, 0.0]))
    with pytest.raises(ValueError):
        spectral_efficiency(np.eye(2), "bogus")


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_se_modes_agree_on_rank_one(seed):
    rng = np.random.default_rng(seed)
    # rank-one signal covariance times an inverse interference-plus-noise covariance
    s, c = crandn(rng, 3), crandn(rng, 3, 3)
    m = np.outer(s, s.conj()) @ np.linalg.inv(c @ c.conj().T + 0.1 * np.eye(3))
    assert spectral_efficiency(m) == pytest.approx(spectral_efficiency(m, "scalar"), rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_se_loewner_monotone(seed):
    rng = np.random.default_rng(seed)
    a = crandn(rng, 3, 3)
    b = crandn(rng, 3, 2)
    lo = a @ a.conj().T
    hi = lo + b @ b.conj().T
    assert spectral_efficiency(hi) >= spectral_efficiency(lo) - 1e-12


def test_sum_se():
    m = LinkMetrics(0, 0, 3.2, 1.8, (0, 0), (0, 0), (0, 0))
    assert sum_se(m) == pytest.approx(5.0)
    assert m.se_sum == m.se1 + m.se2
    assert sum_se(LinkMetrics(0, 0, 0.0, 0.0, (0, 0), (0, 0), (0, 0))) == 0


def evaluate(method, ch, ph, d, p_total, cfg):
    prec = build_precoders(method, ch, ph, NS, p_total, d)
    comb = build_combiners(ch, ph, prec, method, d)
    h1, h2, h2i = effective_channels(method, ch, ph, d)
    return link_metrics(h1, h2, h2i, prec, comb, cfg.noise_var1, cfg.noise_var2)


def test_label_permutation_no_irs(scenarios, cfg):
    # swapping UE roles in the no-IRS benchmark leaves the sum unchanged
    for ch, ph, d in scenarios[:10]:
        m = evaluate(MethodId.NO_IRS_BD, ch, ph, d, 0.1, cfg)
        swapped = ChannelSet(ch.J, d, ch.G1, ch.G2)
        s = evaluate(MethodId.NO_IRS_BD, swapped, ph, ch.H2, 0.1, cfg)
        assert s.se_sum == pytest.approx(m.se_sum, rel=1e-9)
        assert s.se1 == pytest.approx(m.se2, rel=1e-9)


def test_sinr_monotone_in_own_power_when_nulled(scenarios, cfg):
    ch, ph, _ = scenarios[0]
    gammas = [evaluate(MethodId.FIB, ch, ph, None, p, cfg).gamma2 for p in (1e-3, 1e-2, 1e-1, 1)]
    assert np.all(np.diff(gammas) > 0)


def test_metrics_invariants(scenarios, cfg):
    for ch, ph, d in scenarios[:10]:
        for method in MethodId:
            m = evaluate(method, ch, ph, d, 0.5, cfg)
            assert m.se1 >= 0 and m.se2 >= 0
            assert m.se_sum == m.se1 + m.se2
            assert min(m.interference_power) >= 0
