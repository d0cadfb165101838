"""Evaluating chains: images, swallowing, conformal radius, weld hulls."""

from __future__ import annotations

import logging

import numpy as np

from config.config import Config
from geometry.points import ComplexPoint, as_array, as_point
from loewner.slit import chordal_derivative, chordal_forward, radial_forward
from loewner.types import LoewnerChain, SwallowedError

logger = logging.getLogger(__name__)


def _interior(v: np.ndarray, kind: str) -> np.ndarray:
    if kind == "radial":
        return np.abs(v) < 1.0 - Config.BOUNDARY_TOL
    return np.isfinite(v) & (v.imag > Config.IM_TOL)


def chain_eval_array(ch: LoewnerChain, z, n_steps: int | None = None, derivative: bool = False):
    """Images of z under the first n_steps steps (all by default).

    Returns ``(images, swallowed_at, deriv)``. ``swallowed_at`` holds the
    1-based step at which an interior point left the domain, 0 otherwise.
    ``deriv`` is None unless requested.
    """
    z = as_array(z).ravel()
    n = len(ch) if n_steps is None else min(n_steps, len(ch))
    v = ch.pre.apply(z)
    dv = ch.pre.derivative(z) if derivative else None
    alive = _interior(v, ch.kind)
    inside = alive.copy()
    swallowed = np.zeros(len(z), dtype=int)
    for k in range(n):
        if ch.kind == "radial":
            if derivative:
                v, dg = radial_forward(v, ch.w[k], ch.dcap[k], with_derivative=True)
                dv = dv * dg
            else:
                v = radial_forward(v, ch.w[k], ch.dcap[k])
        else:
            g = chordal_forward(v, ch.w[k], ch.dcap[k])
            if derivative:
                dv = dv * chordal_derivative(v, g, ch.w[k])
            v = g
        gone = alive & ~_interior(v, ch.kind)
        if gone.any():
            swallowed[gone] = k + 1
            alive &= ~gone
    out = ch.post.apply(v)
    if derivative:
        dv = dv * ch.post.derivative(v)
    swallowed[~inside] = 0
    return out, swallowed, dv


def chain_eval(ch: LoewnerChain, z: ComplexPoint) -> ComplexPoint:
    """Image of z; raises SwallowedError with the step that swallowed it."""
    z = as_point(z)
    out, swallowed, _ = chain_eval_array(ch, [z.to_complex()])
    if swallowed[0]:
        raise SwallowedError(f"{z} is swallowed", step=int(swallowed[0]))
    return ComplexPoint.from_complex(complex(out[0]))


def conformal_radius_at(ch: LoewnerChain, x: ComplexPoint) -> float:
    """Conformal radius at x of the domain left by the chain: 2·Im g(x)/|g'(x)|."""
    x = as_point(x)
    if not x.is_interior():
        raise ValueError(f"conformal radius needs an interior point, got {x}")
    out, swallowed, dv = chain_eval_array(ch, [x.to_complex()], derivative=True)
    if swallowed[0]:
        raise SwallowedError(f"{x} is swallowed", step=int(swallowed[0]))
    return float(2.0 * out[0].imag / abs(dv[0]))


def harmonic_arcs(ch: LoewnerChain) -> tuple[np.ndarray, np.ndarray]:
    """Weld points of each step relative to the final driving value.

    Radial offsets are angles unwrapped outward from the tip, so left
    offsets are negative (clockwise) and right offsets positive.
    """
    if ch.weld_left is None or ch.weld_right is None:
        raise ValueError("chain carries no weld records")
    if ch.kind == "chordal":
        return ch.weld_left - ch.tip, ch.weld_right - ch.tip
    tip = np.exp(1j * ch.tip)

    def unwrap(pts: np.ndarray) -> np.ndarray:
        seq = np.angle(np.concatenate(([1.0 + 0j], pts[::-1] / tip)))
        return np.unwrap(seq)[1:][::-1]

    return unwrap(ch.weld_left), unwrap(ch.weld_right)


def weld_hull(ch: LoewnerChain) -> tuple[np.ndarray, np.ndarray]:
    """For each step k, the boundary interval consumed by steps k..n.

    Returns the lower and upper ends as suffix minima and maxima of the
    weld offsets.
    """
    left, right = harmonic_arcs(ch)
    lo = np.minimum.accumulate(left[::-1])[::-1]
    hi = np.maximum.accumulate(right[::-1])[::-1]
    return np.minimum(lo, 0.0), np.maximum(hi, 0.0)


def consumed_measure(ch: LoewnerChain) -> np.ndarray:
    """Harmonic measure from the observation point of the curve after each step start.

    Entry k is the measure of the part of the curve consumed by steps k..n.
    """
    if ch.kind != "radial":
        raise ValueError("harmonic measure needs a radial chain")
    lo, hi = weld_hull(ch)
    return np.minimum(hi - lo, 2.0 * np.pi) / (2.0 * np.pi)
