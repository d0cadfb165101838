from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pydantic import ValidationError
from scipy.stats import kstest

from analysis.diagnostics import time_separation_diag
from geometry.points import ComplexPoint
from sle.config import SleConfig
from sle.sampler import sample_chordal_batch, sample_chordal_driving, sample_radial_sle_kr, sample_sle_trace


def test_config_defaults_dt_from_horizon():
    cfg = SleConfig(kappa=2.0, T=2.0)
    assert cfg.dt == pytest.approx(2e-4)
    assert cfg.n_steps == 10_000


def test_config_rejects_bad_grid():
    with pytest.raises(ValidationError):
        SleConfig(kappa=2.0, T=0.01, dt=0.1)
    with pytest.raises(ValidationError):
        SleConfig(kappa=-1.0)
    with pytest.raises(ValidationError):
        SleConfig(kappa=2.0, w0=1.0, v0=1.0)


def test_seed_determinism():
    cfg = SleConfig(kappa=4.0, T=1.0, dt=1e-3, seed=11)
    assert_array_equal(sample_chordal_driving(cfg).values, sample_chordal_driving(cfg).values)
    other = sample_chordal_driving(cfg.model_copy(update={"seed": 12}))
    assert not np.array_equal(sample_chordal_driving(cfg).values, other.values)


def test_batch_uses_consecutive_seeds():
    cfg = SleConfig(kappa=2.0, T=0.1, dt=1e-3, seed=5)
    batch = sample_chordal_batch(cfg, 3)
    assert [W.meta["seed"] for W in batch] == [5, 6, 7]


def test_zero_kappa_gives_vertical_slit():
    trace = sample_sle_trace(SleConfig(kappa=0.0, T=1.0, dt=0.01))
    assert_allclose(trace.points.real, 0.0, atol=1e-12)
    assert trace.points[-1].imag == pytest.approx(2.0)


def test_zero_rho_radial_matches_brownian_driving():
    cfg = SleConfig(kappa=2.0, rho=0.0, w0=0.0, v0=np.pi, T=0.05, dt=1e-4, seed=3)
    W, V = sample_radial_sle_kr(cfg)
    assert_allclose(W.values, sample_chordal_driving(cfg).values, atol=1e-12)
    assert_allclose(np.abs(V), 1.0)


def test_increments_look_gaussian():
    kappa, dt = 4.0, 1e-4
    W = sample_chordal_driving(SleConfig(kappa=kappa, T=1.0, dt=dt, seed=1))
    z = np.diff(W.values) / np.sqrt(kappa * dt)
    assert kstest(z, "norm").pvalue > 0.01
    lag1 = np.corrcoef(z[:-1], z[1:])[0, 1]
    assert abs(lag1) < 4.0 / np.sqrt(len(z))


@pytest.mark.slow
@pytest.mark.parametrize("kappa", [2.0, 4.0, 6.0])
def test_terminal_variance_is_kappa_t(kappa):
    cfg = SleConfig(kappa=kappa, T=1.0, dt=0.01)
    ends = np.array([W.values[-1] for W in sample_chordal_batch(cfg, 10_000)])
    assert np.var(ends) / cfg.T == pytest.approx(kappa, rel=0.05)


def test_interior_viewpoint_trace_lives_in_half_plane():
    trace = sample_sle_trace(SleConfig(kappa=2.0, T=0.5, dt=5e-3, seed=2), viewpoint=ComplexPoint(0.3, 0.8))
    assert trace.domain == "half_plane"
    assert abs(trace.points[0]) < 1e-9


def test_zero_rho_radial_variance_for_kappa_six():
    cfg = SleConfig(kappa=6.0, rho=0.0, T=0.1, dt=2e-3)
    ends = []
    for k in range(4000):
        W, _ = sample_radial_sle_kr(cfg.model_copy(update={"seed": k}))
        if "collision" not in W.meta:
            ends.append(W.values[-1])
    assert len(ends) > 3900
    assert np.var(ends) / cfg.T == pytest.approx(6.0, rel=0.1)


def test_viewpoint_drift_pushes_driving_away_from_force_point():
    kappa, w0, v0, T = 2.0, 0.0, 2.0, 0.05
    rho = kappa - 6.0
    drift = -(rho / 2.0) / np.tan((v0 - w0) / 2.0)
    assert drift > 0
    cfg = SleConfig(kappa=kappa, rho=rho, w0=w0, v0=v0, T=T, dt=1e-3)
    ends = np.array([sample_radial_sle_kr(cfg.model_copy(update={"seed": k}))[0].values[-1] for k in range(2000)])
    assert np.mean(ends - w0) > 0
    assert np.mean(ends - w0) == pytest.approx(drift * T, rel=0.2)


@pytest.mark.slow
def test_kappa_six_traces_are_time_separated():
    passed = 0
    for seed in range(10):
        trace = sample_sle_trace(SleConfig(kappa=6.0, T=1.0, dt=1e-3, seed=seed))
        passed += time_separation_diag(trace, 0.5, 0.02) < 0.1
    assert passed >= 8
