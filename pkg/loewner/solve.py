"""Forward Loewner solvers: driving function to trace, and driving function to chain."""

from __future__ import annotations

import logging

import numpy as np

from curves.curve import Curve
from geometry.mobius import MobiusTransform, chordal_transport, radial_transport
from geometry.points import I
from loewner.slit import chordal_inverse, radial_inverse
from loewner.types import DrivingFunction, LoewnerChain

logger = logging.getLogger(__name__)


def _grid(W: DrivingFunction, n: int | None) -> np.ndarray:
    if n is None:
        return W.times
    if n < 1:
        raise ValueError("need at least one step")
    return np.linspace(0.0, W.T, n + 1)


def _steps(W: DrivingFunction, n: int | None):
    t = _grid(W, n)
    if len(t) < 2 or W.T <= 0:
        raise ValueError("driving function has zero capacity; nothing to trace")
    return t, W(t[1:]), np.diff(t)


def solve_chordal_trace(W: DrivingFunction, n: int | None = None) -> Curve:
    """Trace of the chordal chain with slits based at W(t_k), capacity-uniform if n is given.

    The k-th sample is ``f_1 ∘ ... ∘ f_k(W(t_k))`` where ``f_j`` inverts the
    j-th elementary map. All samples are pushed back together, last step first.
    """
    t, w, dcap = _steps(W, n)
    m = len(w)
    buf = np.empty(m, dtype=complex)
    for k in range(m - 1, -1, -1):
        buf[k] = w[k]
        buf[k:] = chordal_inverse(buf[k:], w[k], dcap[k])
    pts = np.concatenate(([complex(W(0.0))], buf))
    logger.debug("chordal trace: %d steps, T=%.4g", m, W.T)
    return Curve(pts, t / t[-1], "half_plane")


def solve_radial_trace(W: DrivingFunction, n: int | None = None) -> Curve:
    """Disc trace from e^{iW(0)} toward 0; the capacity grows by e^{t}."""
    t, theta, dcap = _steps(W, n)
    m = len(theta)
    buf = np.empty(m, dtype=complex)
    for k in range(m - 1, -1, -1):
        buf[k] = np.exp(1j * theta[k])
        buf[k:] = radial_inverse(buf[k:], theta[k], dcap[k])
    pts = np.concatenate(([np.exp(1j * W(0.0))], buf))
    # radial inverse maps stay in the closed disc; clip rounding above 1
    mod = np.abs(pts)
    pts = np.where(mod > 1.0, pts / np.maximum(mod, 1.0), pts)
    logger.debug("radial trace: %d steps, T=%.4g", m, W.T)
    return Curve(pts, t / t[-1], "disc")


def chain_from_driving(W: DrivingFunction, n: int | None = None) -> LoewnerChain:
    """Forward chain of elementary maps for W, framed by its observation point."""
    t = _grid(W, n)
    x = W.observation
    if W.kind == "radial":
        pre = radial_transport(x if x is not None else I)
    elif x is not None:
        pre = chordal_transport(x)
    else:
        pre = MobiusTransform.identity()
    return LoewnerChain(
        W.kind, W(t[1:]), np.diff(t), W.w0, pre, pre.inverse(), x,
        sample_params=t[1:] / t[-1] if len(t) > 1 else None,
    )
