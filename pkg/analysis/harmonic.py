"""
Harmonic measure from welding arcs
==================================
After unzipping a curve from an interior point x the complement component
of x is the unit disc with x at 0, so harmonic measure from x is normalised
arc length. The part of the curve grown after capacity time s occupies the
arc between the suffix extremes of the weld records of the steps after s.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from curves.curve import Curve
from geometry.points import ComplexPoint, as_point
from loewner.chain import chain_eval_array, consumed_measure, weld_hull
from loewner.types import LoewnerChain
from loewner.unzip import unzip_radial_chain

logger = logging.getLogger(__name__)


class AnalysisError(ValueError):
    """Diagnostic called outside its domain (viewpoint on the curve, empty grid, bad weights)."""


def _interior_viewpoint(x: ComplexPoint | complex) -> ComplexPoint:
    x = as_point(x)
    if not x.is_interior():
        raise AnalysisError(f"harmonic measure needs an interior point, got {x}")
    return x


def measure_profile(ch: LoewnerChain) -> tuple[np.ndarray, np.ndarray]:
    """Capacity times t_k and the harmonic measure of the curve grown after t_k, ending at (T, 0)."""
    if len(ch) == 0:
        return np.array([0.0]), np.array([0.0])
    starts = np.concatenate(([0.0], ch.times[:-1]))
    return np.append(starts, ch.T), np.append(consumed_measure(ch), 0.0)


def hitting_prob_conformal(c: Curve, x: ComplexPoint | complex, s: float, t: float) -> float:
    """Probability that Brownian motion from x first exits through c[s, t] (capacity times from x).

    Times past the swallowing of x are clamped: the fillings stay frozen there.
    """
    x = _interior_viewpoint(x)
    if s < 0 or t <= s:
        raise AnalysisError(f"need 0 <= s < t, got s={s}, t={t}")
    tt, m = measure_profile(unzip_radial_chain(c, x))
    return float(np.interp(s, tt, m) - np.interp(t, tt, m))


def hitting_prob_real_line(c: Curve, x: ComplexPoint | complex) -> float:
    """Probability that Brownian motion from x exits through the real line."""
    x = _interior_viewpoint(x)
    _, m = measure_profile(unzip_radial_chain(c, x))
    return float(1.0 - m[0])


def _disc_images(ch: LoewnerChain, pts) -> tuple[np.ndarray, np.ndarray]:
    out, swallowed, _ = chain_eval_array(ch, pts)
    return ch.pre.apply(out), swallowed


def _arc_measure(zeta: complex, a: float, b: float) -> float:
    """Harmonic measure from zeta in the disc of the counterclockwise arc e^{ia} -> e^{ib}."""
    if b - a >= 2.0 * np.pi:
        return 1.0
    ends = np.exp(1j * np.array([a, b]))
    img = (ends - zeta) / (1.0 - np.conj(zeta) * ends)
    sweep = np.mod(np.angle(img[1]) - np.angle(img[0]), 2.0 * np.pi)
    return float(sweep / (2.0 * np.pi))


def alpha_left(
    c: Curve,
    x: ComplexPoint | complex,
    z: ComplexPoint | complex,
    ref_p: ComplexPoint | complex | None = None,
    side: Literal["left", "right"] = "left",
) -> float:
    """Probability that Brownian motion from z leaves the component of x through the left side of c.

    With ``ref_p`` (a real point left of the curve's base, or infinity) the
    arc starts at the image of ref_p instead, so the real line between ref_p
    and the base counts as left. ``side="right"`` measures the right side.
    """
    x = _interior_viewpoint(x)
    z = as_point(z)
    ch = unzip_radial_chain(c, x)
    if len(ch) == 0:
        return 0.0
    zeta, swallowed = _disc_images(ch, [z.to_complex()])
    if swallowed[0]:
        raise AnalysisError(f"{z} is not in the component of {x}")
    zeta = complex(zeta[0])
    lo, hi = weld_hull(ch)
    tip = ch.tip
    if side == "right":
        return _arc_measure(zeta, tip, tip + hi[0])
    if ref_p is None:
        start = tip + lo[0]
    else:
        p = as_point(ref_p)
        if not p.is_boundary():
            raise AnalysisError(f"reference point must be on the real line, got {p}")
        img, _ = _disc_images(ch, [p.to_complex()])
        start = tip - np.mod(tip - np.angle(img[0]), 2.0 * np.pi)
    return _arc_measure(zeta, start, tip)
