import logging
from typing import Literal

import numpy as np

from config.config import Config
from curves.curve import Curve
from geometry.mobius import MobiusTransform, cayley_array, cayley_inv_array, mobius_from_points
from geometry.points import INF, ComplexPoint, as_point
from families.spec import FamilyError

logger = logging.getLogger(__name__)

DomainKind = Literal["half_plane", "disc", "half_strip"]


def _ccw_midpoint(p: complex, q: complex) -> complex:
    """Midpoint of the counterclockwise unit-circle arc from p to q."""
    a = np.angle(p)
    return complex(np.exp(1j * (a + np.mod(np.angle(q) - a, 2.0 * np.pi) / 2.0)))


def _on_boundary(z: ComplexPoint, kind: str) -> bool:
    tol = Config.ENDPOINT_TOL
    if z.at_infinity:
        return kind == "half_plane"
    if kind == "disc":
        return abs(abs(z.to_complex()) - 1.0) <= tol
    if kind == "half_strip":
        return abs(z.im) <= tol or (abs(abs(z.re) - 1.0) <= tol and z.im >= -tol)
    return abs(z.im) <= tol


def canonical_map(kind: str, a: ComplexPoint, b: ComplexPoint) -> MobiusTransform:
    """Möbius map onto the half-plane sending a -> -1, b -> 1 and the midpoint of the arc from b to a -> ∞.

    For the half-strip the map acts after z -> sin(πz/2).
    """
    if kind == "disc":
        pa, pb = a.to_complex(), b.to_complex()
        mid = _ccw_midpoint(pb, pa)
        return mobius_from_points((pa, pb, mid), (-1, 1, INF))
    if kind in ("half_plane", "half_strip"):
        if kind == "half_strip":
            a = as_point(np.sin(np.pi * a.to_complex() / 2.0))
            b = as_point(np.sin(np.pi * b.to_complex() / 2.0))
        # increasing real order is counterclockwise on the Cayley circle
        ca, cb = cayley_array([a.to_complex(), b.to_complex()])
        m = _ccw_midpoint(cb, ca)
        mid = INF if abs(m - 1.0) <= Config.CDIST_TOL else complex(cayley_inv_array([m])[0])
        return mobius_from_points((a, b, mid), (-1, 1, INF))
    raise FamilyError(f"unknown domain kind {kind!r}")


def transport_to_canonical(c: Curve, kind: DomainKind, a: ComplexPoint | complex, b: ComplexPoint | complex) -> Curve:
    """Move a curve from its domain to the half-plane with endpoints -1 and 1."""
    a, b = as_point(a), as_point(b)
    for name, p in (("a", a), ("b", b)):
        if not _on_boundary(p, kind):
            raise FamilyError(f"endpoint {name}={p} is not on the boundary of the {kind}")
    m = canonical_map(kind, a, b)
    if kind == "disc":
        pts = c.disc_points()
    else:
        pts = c.points
        if kind == "half_strip":
            pts = np.sin(np.pi * pts / 2.0)
    out = m.apply(pts)
    low = np.isfinite(out) & (out.imag < 0.0)
    out[low] = out[low].real
    logger.debug("transported %d samples from the %s", len(out), kind)
    return Curve(out, c.params, "half_plane")
