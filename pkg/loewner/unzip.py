"""
Zipper: curve to driving function
=================================
Each step maps the next sample to the boundary with one elementary slit map
and applies that map to every remaining sample and to the weld points of the
earlier steps. The forward solver run on the recorded steps reproduces the
input samples, so round trips are exact on the native grid.
"""

from __future__ import annotations

import logging

import numpy as np

from config.config import Config
from curves.curve import Curve, CurveError
from geometry.mobius import cdist_array, viewpoint_transport
from geometry.points import ComplexPoint, as_point
from loewner.slit import chordal_forward, radial_arc_halfwidth, radial_forward, radial_step_for_sample
from loewner.types import DrivingFunction, LoewnerChain, ObservationPointError, SwallowedError

logger = logging.getLogger(__name__)


def _wrap(a: float) -> float:
    return (a + np.pi) % (2.0 * np.pi) - np.pi


def _chordal_steps(p: np.ndarray, params: np.ndarray):
    """Zip the half-plane samples p (p[0] real) down to the real line."""
    if not np.isfinite(p[0]) or abs(p[0].imag) > Config.ENDPOINT_TOL * max(1.0, abs(p[0])):
        raise CurveError(f"curve must start on the real line, starts at {p[0]}")
    rem = p[1:].copy()
    n = len(rem)
    w, dcap, prm = np.empty(n), np.empty(n), np.empty(n)
    left, right = np.empty(n), np.empty(n)
    m = 0
    truncated = None
    for k in range(n):
        zeta = rem[k]
        if not np.isfinite(zeta):
            truncated = k + 1
            break
        u, v = zeta.real, zeta.imag
        if v <= Config.IM_TOL * max(1.0, abs(u)):
            raise SwallowedError("sample mapped onto the real line; curve is not visible from infinity", step=k + 1)
        d = 0.25 * v * v
        rem[k + 1:] = chordal_forward(rem[k + 1:], u, d)
        if m:
            left[:m] = chordal_forward(left[:m], u, d).real
            right[:m] = chordal_forward(right[:m], u, d).real
        w[m], dcap[m], prm[m] = u, d, params[k + 1]
        left[m], right[m] = u - v, u + v
        m += 1
    meta = {"truncated_at_step": truncated} if truncated else {}
    return float(p[0].real), w[:m], dcap[:m], left[:m], right[:m], prm[:m], meta


def unzip_chordal_chain(c: Curve, x: ComplexPoint | None = None) -> LoewnerChain:
    """Chordal zipper toward infinity, or toward the boundary point x."""
    hp = c.half_plane_points()
    if x is None or as_point(x).at_infinity:
        pre = viewpoint_transport(ComplexPoint.infinity())
        x = None
    else:
        x = as_point(x)
        pre = viewpoint_transport(x)
    w0, w, dcap, left, right, prm, meta = _chordal_steps(pre.apply(hp), c.params)
    logger.debug("chordal unzip: %d steps, T=%.4g", len(w), dcap.sum())
    return LoewnerChain(
        "chordal", w, dcap, w0, pre, pre.inverse(), x,
        weld_left=left, weld_right=right, sample_params=prm, meta=meta,
    )


def unzip_chordal(c: Curve) -> DrivingFunction:
    """Driving function of c seen from infinity."""
    return unzip_chordal_chain(c).driving()


def _separates(tip: complex, contact: complex, target: complex) -> bool:
    """True when the chord from tip to contact splits 0 from target in the disc."""
    if not (np.isfinite(contact) and np.isfinite(target)):
        return True
    chord = contact / abs(contact) - tip
    if abs(chord) < Config.BOUNDARY_TOL:
        return False
    side_x = (np.conj(chord) * (0.0 - tip)).imag
    side_t = (np.conj(chord) * (target - tip)).imag
    return side_x * side_t < 0.0


def unzip_radial_chain(c: Curve, x: ComplexPoint) -> LoewnerChain:
    """Zipper seen from x; boundary viewpoints fall back to the chordal zipper.

    A sample that reaches the circle is a contact. Contacts that cut x off
    from the far end of the curve end the chain (``meta["swallow_step"]``);
    the others close pockets invisible from x and are skipped
    (``meta["contact_steps"]``).
    """
    x = as_point(x)
    if x.is_boundary(Config.IM_TOL):
        return unzip_chordal_chain(c, x)
    if x.im < 0:
        raise ObservationPointError(f"viewpoint {x} lies below the real line")
    hp = c.half_plane_points()
    gap = float(np.min(cdist_array(hp, np.full(len(hp), x.to_complex()))))
    if gap <= Config.OBSERVATION_TOL:
        raise ObservationPointError(f"viewpoint {x} lies on the curve (cdist {gap:.2e})")

    pre = viewpoint_transport(x)
    p = pre.apply(hp)
    if abs(abs(p[0]) - 1.0) > Config.ENDPOINT_TOL:
        raise CurveError(f"curve must start on the boundary, starts at {hp[0]}")
    theta = float(np.angle(p[0]))
    w0 = theta
    rem = p[1:].copy()
    n = len(rem)
    w, dcap, prm = np.empty(n), np.empty(n), np.empty(n)
    left, right = np.empty(n, dtype=complex), np.empty(n, dtype=complex)
    m = 0
    contacts, swallow, hit = 0, None, None
    for k in range(n):
        zeta = rem[k]
        r = abs(zeta)
        if np.isfinite(r) and r < Config.SWALLOW_CRAD:
            hit = k + 1
            break
        d = 0.0
        if np.isfinite(r) and r < 1.0 - Config.BOUNDARY_TOL:
            raw, d = radial_step_for_sample(zeta)
        if d <= 0.0:
            if k == n - 1:
                break
            if _separates(np.exp(1j * theta), zeta, rem[-1]):
                swallow = k + 1
                break
            contacts += 1
            continue
        theta = theta + _wrap(raw - theta)
        rem[k + 1:] = radial_forward(rem[k + 1:], theta, d)
        if m:
            left[:m] = radial_forward(left[:m], theta, d)
            right[:m] = radial_forward(right[:m], theta, d)
        beta = radial_arc_halfwidth(d)
        w[m], dcap[m], prm[m] = theta, d, c.params[k + 1]
        left[m], right[m] = np.exp(1j * (theta - beta)), np.exp(1j * (theta + beta))
        m += 1

    meta = {"contact_steps": contacts}
    if swallow:
        meta["swallow_step"] = swallow
        logger.info("viewpoint %s cut off from the curve's end at sample %d; driving truncated", x, swallow)
    if hit:
        meta["hit_step"] = hit
        logger.info("curve reaches the viewpoint %s at sample %d; driving truncated", x, hit)
    if contacts:
        logger.debug("viewpoint %s: %d boundary contacts skipped", x, contacts)
    return LoewnerChain(
        "radial", w[:m], dcap[:m], w0, pre, pre.inverse(), x,
        weld_left=left[:m], weld_right=right[:m], sample_params=prm[:m], meta=meta,
    )


def unzip_radial_at(c: Curve, x: ComplexPoint) -> DrivingFunction:
    """Driving function of c seen from x, with capacity measured from x."""
    return unzip_radial_chain(c, x).driving()
