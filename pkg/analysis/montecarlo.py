"""
Monte Carlo hitting probabilities
=================================
Walk-on-spheres in the half-plane with the curve and the real line as
absorbing barrier. Each walker jumps to a uniform point on a circle of radius
``min(step, d/2)``, d being its distance to the barrier, and is absorbed
within ``step/10``. Walkers that stray beyond ``FAR_RATIO`` times the radius
of the half-disc holding the curve and the start point take one exact jump:
back onto that half-circle or out through the real line. A hit on the curve
is credited to the capacity time (seen from the start point) of the nearest
curve sample.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy.spatial import cKDTree
from tqdm import tqdm

from config.config import Config
from curves.curve import Curve, densify
from geometry.points import ComplexPoint, as_point, is_inf
from loewner.unzip import unzip_radial_chain
from analysis.harmonic import AnalysisError

logger = logging.getLogger(__name__)

FAR_RATIO = 1.5


def _sample_times(c: Curve, z: ComplexPoint, params: np.ndarray) -> np.ndarray:
    """Capacity time from z at which each curve parameter is consumed."""
    ch = unzip_radial_chain(c, z)
    if len(ch) == 0:
        return np.zeros(len(params))
    return np.interp(params, np.concatenate(([0.0], ch.sample_params)), np.concatenate(([0.0], ch.times)))


def _return_or_exit(p: np.ndarray, center: float, radius: float, rng: np.random.Generator):
    """Exit of Brownian motion started at p from the half-plane minus the half-disc of radius around center.

    zeta + 1/zeta, zeta = (z - center)/radius, maps that domain onto the
    half-plane and the half-circle onto [-2, 2], where the exit law is Cauchy.
    Returns the landing points of the walkers that come back and their mask.
    """
    zeta = (p - center) / radius
    w = zeta + 1.0 / zeta
    u = w.real + w.imag * np.tan(np.pi * (rng.uniform(size=len(p)) - 0.5))
    back = np.abs(u) <= 2.0
    return center + radius * np.exp(1j * np.arccos(0.5 * u[back])), back


def hit_times_mc(
    c: Curve | None,
    z: ComplexPoint | complex,
    walkers: int | None = None,
    step: float | None = None,
    seed: int | None = None,
    max_iter: int | None = None,
) -> np.ndarray:
    """Capacity time of each walker's exit point on c, NaN for exits through the real line."""
    z = as_point(z)
    if not z.is_interior():
        raise AnalysisError(f"walkers must start in the open half-plane, got {z}")
    walkers = walkers or Config.MC_WALKERS
    step = step or Config.MC_STEP
    max_iter = max_iter or Config.MC_MAX_ITER
    eps = step / 10.0
    rng = np.random.Generator(np.random.Philox(Config.rng_seed(seed)))

    tree, times = None, None
    held = np.array([z.to_complex()])
    if c is not None:
        hp = c.to_half_plane()
        if np.any(is_inf(hp.points)):
            raise AnalysisError("Monte Carlo barrier must be bounded")
        dense = densify(hp, eps)
        d0 = float(np.min(np.abs(dense.points - z.to_complex())))
        if d0 <= eps:
            raise AnalysisError(f"start point {z} lies on the curve")
        tree = cKDTree(np.column_stack([dense.points.real, dense.points.imag]))
        times = _sample_times(hp, z, dense.params)
        held = np.append(held, dense.points)
    center = 0.5 * (held.real.min() + held.real.max())
    r_in = float(np.max(np.abs(held - center))) + step
    r_out = FAR_RATIO * r_in

    pos = np.full(walkers, z.to_complex())
    out = np.full(walkers, np.nan)
    alive = np.ones(walkers, dtype=bool)
    # lower bound on each walker's distance to the curve; the tree is queried below 2*step
    near = np.zeros(walkers)
    for _ in tqdm(range(max_iter), desc="walkers", leave=False, disable=walkers < 10_000):
        idx = np.flatnonzero(alive)
        if not len(idx):
            break
        p = pos[idx]
        d_line = p.imag
        d_curve, nearest = np.full(len(p), np.inf), np.zeros(len(p), dtype=int)
        if tree is not None:
            d_curve = near[idx].copy()
            ask = d_curve < 2.0 * step
            if ask.any():
                d_curve[ask], nearest[ask] = tree.query(np.column_stack([p[ask].real, p[ask].imag]))
        d = np.minimum(d_line, d_curve)
        done = d < eps
        on_curve = done & (d_curve < d_line)
        out[idx[on_curve]] = times[nearest[on_curve]] if times is not None else np.nan
        alive[idx[done]] = False
        move = ~done
        jump = np.minimum(step, 0.5 * d[move])
        phi = rng.uniform(0.0, 2.0 * np.pi, int(move.sum()))
        moved = idx[move]
        pos[moved] = p[move] + jump * np.exp(1j * phi)
        near[moved] = d_curve[move] - jump
        far = moved[np.abs(pos[moved] - center) > r_out]
        if len(far):
            land, back = _return_or_exit(pos[far], center, r_in, rng)
            alive[far[~back]] = False
            pos[far[back]] = land
            near[far[back]] = 0.0
    if alive.any():
        logger.warning("%d of %d walkers not absorbed after %d jumps; counted as real-line exits",
                       int(alive.sum()), walkers, max_iter)
    logger.info("Monte Carlo from %s: %.4f of %d walkers hit the curve", z, float(np.mean(~np.isnan(out))), walkers)
    return out


def hitting_prob_mc(
    c: Curve | None,
    z: ComplexPoint | complex,
    s: float,
    t: float,
    walkers: int | None = None,
    step: float | None = None,
    seed: int | None = None,
) -> float:
    """Fraction of walkers from z absorbed on c[s, t]; with ``c=None`` the barrier is the real line alone."""
    if s < 0 or t <= s:
        raise AnalysisError(f"need 0 <= s < t, got s={s}, t={t}")
    hits = hit_times_mc(c, z, walkers, step, seed)
    inside = ~np.isnan(hits) & (hits >= s) & (hits <= t)
    return float(np.mean(inside))


def real_line_prob_mc(c: Curve | None, z: ComplexPoint | complex, **kw) -> float:
    """Fraction of walkers from z absorbed on the real line."""
    return float(np.mean(np.isnan(hit_times_mc(c, z, **kw))))
