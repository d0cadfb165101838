"""Carathéodory, time-separation and harmonic-parametrisation diagnostics."""

from __future__ import annotations

import logging
from typing import Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree
from scipy.spatial.distance import pdist

from curves.curve import Curve, densify
from geometry.mobius import cayley_array, cayley_inv_array, cdist_array
from geometry.points import ComplexPoint, as_point
from loewner.chain import chain_eval_array, consumed_measure
from loewner.solve import chain_from_driving, solve_chordal_trace, solve_radial_trace
from loewner.types import DrivingFunction
from loewner.unzip import unzip_radial_chain
from analysis.harmonic import AnalysisError

logger = logging.getLogger(__name__)

DIAMETER_SAMPLE = 4000


def _xy(pts: np.ndarray) -> np.ndarray:
    return np.column_stack([pts.real, pts.imag])


def _framed(W: DrivingFunction, x: ComplexPoint | None) -> DrivingFunction:
    if x is None or W.observation is not None:
        return W
    return DrivingFunction(W.times, W.values, W.kind, as_point(x), W.meta)


def caratheodory_sup(
    W1: DrivingFunction,
    W2: DrivingFunction,
    x: ComplexPoint | complex | None,
    t: float,
    eps: float,
    grid: int = 40,
    n_steps: int = 400,
    checkpoints: int = 8,
) -> float:
    """sup over [0, t] and the ε-interior of W2's hull of cdist(g1(z), g2(z)).

    The hull is the cdist ε/2-neighbourhood of W2's trace plus the points
    either chain swallows; the ε-interior is sampled on a grid×grid lattice
    of the Cayley disc.
    """
    if W1.kind != W2.kind:
        raise AnalysisError("drivings of different kinds")
    if t <= 0 or t > min(W1.T, W2.T) + 1e-12:
        raise AnalysisError(f"t={t} outside the common horizon")
    W1, W2 = _framed(W1, x).truncated(t), _framed(W2, x).truncated(t)
    ch1, ch2 = chain_from_driving(W1, n_steps), chain_from_driving(W2, n_steps)

    if W2.kind == "radial":
        disc = solve_radial_trace(W2, n_steps).points
        trace = ch2.post.apply(disc)
    else:
        trace = ch2.post.apply(solve_chordal_trace(W2, n_steps).points)
    u = np.linspace(-1.0, 1.0, grid)
    lattice = (u[:, None] + 1j * u[None, :]).ravel()
    lattice = lattice[np.abs(lattice) < 1.0 - eps]
    tree = cKDTree(_xy(cayley_array(trace)))
    far, _ = tree.query(_xy(lattice))
    pts = cayley_inv_array(lattice[far >= eps])
    pts = pts[np.isfinite(pts) & (pts.imag > 0)]
    _, gone1, _ = chain_eval_array(ch1, pts)
    _, gone2, _ = chain_eval_array(ch2, pts)
    pts = pts[(gone1 == 0) & (gone2 == 0)]
    if not len(pts):
        raise AnalysisError(f"no grid points at cdist >= {eps} from the hull")

    sup = 0.0
    for k in np.unique(np.linspace(1, n_steps, checkpoints).astype(int)):
        g1, _, _ = chain_eval_array(ch1, pts, n_steps=k)
        g2, _, _ = chain_eval_array(ch2, pts, n_steps=k)
        sup = max(sup, float(np.max(cdist_array(g1, g2))))
    logger.debug("caratheodory sup over %d grid points: %.3e", len(pts), sup)
    return sup


def time_separation_diag(c: Curve, t: float, eps: float) -> float:
    """Largest cdist diameter of a cluster where c[0, t] and c[t, 1] come within eps.

    ``t`` is the curve parameter. Samples within cdist arclength 2·eps of
    c(t) are ignored, so a simple curve scores 0 once eps is below its
    self-distance.
    """
    if not 0.0 < t < 1.0:
        raise AnalysisError("t must lie strictly inside (0, 1)")
    dense = densify(c, eps / 2.0, "cdist")
    pts = dense.disc_points()
    arc = dense.arclength("cdist")
    k = dense.param_at(t)
    far = np.abs(arc - arc[k]) > 2.0 * eps
    past = np.flatnonzero((dense.params <= t) & far)
    future = np.flatnonzero((dense.params >= t) & far)
    if not len(past) or not len(future):
        return 0.0
    d_pf, _ = cKDTree(_xy(pts[future])).query(_xy(pts[past]), distance_upper_bound=eps)
    d_fp, _ = cKDTree(_xy(pts[past])).query(_xy(pts[future]), distance_upper_bound=eps)
    near = np.concatenate([past[np.isfinite(d_pf)], future[np.isfinite(d_fp)]])
    if not len(near):
        return 0.0
    xy = _xy(pts[near])
    pairs = cKDTree(xy).query_pairs(2.0 * eps, output_type="ndarray")
    n = len(near)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n)) if len(pairs) else coo_matrix((n, n))
    n_comp, labels = connected_components(graph, directed=False)
    best = 0.0
    for comp in range(n_comp):
        member = xy[labels == comp]
        if len(member) < 2:
            continue
        if len(member) > DIAMETER_SAMPLE:
            member = member[:: int(np.ceil(len(member) / DIAMETER_SAMPLE))]
        best = max(best, float(pdist(member).max()))
    logger.debug("time separation at t=%.3f, eps=%.3g: %d clusters, max diameter %.3g", t, eps, n_comp, best)
    return best


def harmonic_param_s(c: Curve, x_weights: Sequence[Tuple[ComplexPoint | complex, float]], t: float) -> float:
    """Σ a(x) s_x(t), where s_x(t) is the share of the curve's harmonic measure from x grown by parameter t.

    A viewpoint that sees none of the curve contributes 0.
    """
    weights = np.array([w for _, w in x_weights], dtype=float)
    if not len(weights) or np.any(weights <= 0) or abs(weights.sum() - 1.0) > 1e-9:
        raise AnalysisError("weights must be positive and sum to 1")
    total = 0.0
    for (x, a) in x_weights:
        ch = unzip_radial_chain(c, as_point(x))
        if len(ch) == 0:
            continue
        m = consumed_measure(ch)
        k = int(np.searchsorted(ch.sample_params, t, side="right"))
        s_x = 1.0 if k >= len(m) else 1.0 - m[k] / m[0]
        total += a * s_x
    return float(total)
