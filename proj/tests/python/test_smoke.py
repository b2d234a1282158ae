import math

import numpy as np
import pytest

import ggnet


def test_solve_lyapunov_identity():
    sigma = ggnet.solve_lyapunov(np.eye(3))
    assert np.allclose(sigma, np.eye(3), atol=1e-12)


def test_family_member_residual():
    rng = np.random.default_rng(7)
    b = rng.normal(size=(4, 4))
    sigma = b @ b.T / 4 + 0.5 * np.eye(4)
    kappa = rng.normal(size=(4, 4))
    kappa = 0.5 * (kappa - kappa.T)
    L = ggnet.family_member(sigma, kappa)
    res = L @ sigma + sigma @ L.T - 2 * np.eye(4)
    assert np.abs(res).max() < 1e-9


def test_optimize_kappa_worked_example():
    sigma = np.array([[2.0, 1.0], [1.0, 1.0]])
    kappa, L = ggnet.optimize_kappa(sigma)
    assert np.allclose(L, [[0.5, 0.0], [-1.5, 2.5]], atol=1e-8)
    assert abs(np.abs(L).sum() - 4.5) < 1e-8


def test_learn_ggim_identity():
    est = ggnet.learn_ggim(np.eye(3), rho=1e-6)
    assert est["converged"]
    assert np.abs(est["L_hat"] - np.eye(3)).max() < 1e-4
    assert est["xi"] < 1e-4


def test_learn_ggim_bounded_reports_bound():
    rng = np.random.default_rng(11)
    b = rng.normal(size=(4, 4))
    s = b @ b.T / 4 + 0.5 * np.eye(4)
    est = ggnet.learn_ggim_bounded(s, rho=0.01)
    assert "alpha" in est and est["alpha"] > 0
    assert est["bound_holds"]


def test_learn_ggcem_p2():
    s = np.array([[2.0, 1.0], [1.0, 1.0]])
    est = ggnet.learn_ggcem(s, rho=1e-8)
    assert abs(est["P_hat"][1, 0] - 1.5) < 1e-6
    assert abs(est["P_hat"][0, 1]) < 1e-6


def test_learn_ggim_semidef_roundtrip():
    p = 4
    pn = np.eye(p) - np.ones((p, p)) / p
    est = ggnet.learn_ggim_semidef(pn, rho=1e-8)
    assert est["reduced_residual"] < 1e-6
    assert np.abs(est["L_hat"] @ np.ones(p)).max() < 1e-6


def test_simulate_and_covariance():
    cov = ggnet.simulate_diffusion(np.eye(2), samples=20000, stride=25, seed=3)
    assert np.abs(cov - np.eye(2)).max() < 0.15
    draws = ggnet.simulate_diffusion(
        np.eye(2), samples=100, stride=5, seed=3, return_samples=True
    )
    assert draws.shape == (100, 2)
    s = ggnet.sample_covariance(draws)
    assert s.shape == (2, 2)


def test_roc_auc():
    scores = np.array([[0.0, 3.0], [1.0, 0.0]])
    out = ggnet.roc_auc(scores, [(0, 1)])
    assert math.isclose(out["auc"], 1.0)
    with pytest.raises(Exception):
        ggnet.roc_auc(scores, [])
