"""
SLE samplers
============
Chordal SLE_κ driving is √κ times a Brownian motion. The radial SLE(κ;ρ)
system in the disc is integrated by Euler–Maruyama with the force point V
renormalised onto the circle after every step:

    dW = √κ dB + Re[i (ρ/2)(e^{iW} + V)/(e^{iW} - V)] dt
    dV = -V (V + e^{iW})/(V - e^{iW}) dt
"""

from __future__ import annotations

import logging
from typing import List, Optional, Tuple

import numpy as np

from config.config import Config
from curves.curve import Curve
from geometry.mobius import radial_transport
from geometry.points import INFINITY, ZERO, ComplexPoint, as_point
from loewner.solve import solve_chordal_trace, solve_radial_trace
from loewner.types import DrivingFunction
from sle.config import SleConfig

logger = logging.getLogger(__name__)


def _increments(cfg: SleConfig) -> np.ndarray:
    return cfg.generator().normal(0.0, np.sqrt(cfg.dt), cfg.n_steps)


def sample_chordal_driving(cfg: SleConfig) -> DrivingFunction:
    """W_t = w0 + √κ B_t on the grid k·dt."""
    n = cfg.n_steps
    values = np.cumsum(np.concatenate(([cfg.w0], np.sqrt(cfg.kappa) * _increments(cfg))))
    times = cfg.dt * np.arange(n + 1)
    return DrivingFunction(times, values, "chordal", meta={"kappa": cfg.kappa, "seed": cfg.seed})


def sample_chordal_batch(cfg: SleConfig, m: int) -> List[DrivingFunction]:
    """m independent drivings with seeds seed, seed+1, ..."""
    return [sample_chordal_driving(cfg.model_copy(update={"seed": cfg.seed + k})) for k in range(m)]


def sample_radial_sle_kr(cfg: SleConfig) -> Tuple[DrivingFunction, np.ndarray]:
    """Radial SLE(κ;ρ) driving angle and force-point path.

    The run stops early when e^{iW} and V come within the collision
    tolerance; ``meta["collision"]`` then holds the step index.
    """
    inc = _increments(cfg)
    sk = np.sqrt(cfg.kappa)
    dt = cfg.dt
    n = len(inc)
    w_path = np.empty(n + 1)
    v_path = np.empty(n + 1, dtype=complex)
    w = cfg.w0
    v = np.exp(1j * cfg.v0)
    w_path[0], v_path[0] = w, v
    collision: Optional[int] = None
    m = n
    for k in range(n):
        a = np.exp(1j * w)
        drift = 1j * (cfg.rho / 2.0) * (a + v) / (a - v)
        if abs(drift.imag) > 1e-9 * (1.0 + abs(drift.real)):
            raise RuntimeError(f"drift left the real line at step {k}: {drift}")
        w = w + drift.real * dt + sk * inc[k]
        v = v - v * (v + a) / (v - a) * dt
        v = v / abs(v)
        w_path[k + 1], v_path[k + 1] = w, v
        if abs(np.exp(1j * w) - v) < Config.COLLISION_TOL:
            collision = k + 1
            m = k + 1
            logger.info("force point swallowed at step %d (t=%.4g)", collision, collision * dt)
            break
    meta = {"kappa": cfg.kappa, "rho": cfg.rho, "seed": cfg.seed}
    if collision is not None:
        meta["collision"] = collision
    W = DrivingFunction(dt * np.arange(m + 1), w_path[: m + 1], "radial", meta=meta)
    return W, v_path[: m + 1]


def sample_sle_trace(cfg: SleConfig, n: int | None = None, viewpoint: ComplexPoint | None = None) -> Curve:
    """SLE_κ trace in the half-plane from 0 to infinity.

    With an interior viewpoint x the driving is the radial SLE(κ;κ-6) seen
    from x, started at the images of 0 and infinity, and the trace is mapped
    back to the half-plane.
    """
    if viewpoint is None or as_point(viewpoint).at_infinity:
        return solve_chordal_trace(sample_chordal_driving(cfg), n)
    x = as_point(viewpoint)
    frame = radial_transport(x)
    w0 = float(np.angle(frame(ZERO).to_complex()))
    v0 = float(np.angle(frame(INFINITY).to_complex()))
    W, _ = sample_radial_sle_kr(cfg.model_copy(update={"rho": cfg.kappa - 6.0, "w0": w0, "v0": v0}))
    W = DrivingFunction(W.times, W.values, "radial", x, W.meta)
    disc = solve_radial_trace(W, n)
    return Curve(frame.inverse().apply(disc.points), disc.params, "half_plane")
