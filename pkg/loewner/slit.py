"""
Elementary slit maps
====================
Chordal step ``(w, dcap)``: the conformal map of H minus the vertical slit
from ``w`` to ``w + 2i·sqrt(dcap)`` onto H, ``g(z) = w + sqrt((z-w)^2 + 4·dcap)``,
normalised at infinity. Both slit sides land on ``[w - 2·sqrt(dcap), w + 2·sqrt(dcap)]``.

Radial step ``(θ, dcap)``: the map of the disc minus a radial slit ending
at ``e^{iθ}`` onto the disc, fixing 0 with derivative ``e^{dcap}``. It is the
chordal step at 0 of height ``h = sqrt(1 - e^{-dcap})`` conjugated by
``z ↦ cayley_inv(-e^{-iθ} z)`` and rescaled by ``1/sqrt(1 - h^2)``.
"""

from __future__ import annotations

import numpy as np

from config.config import Config
from geometry.mobius import CAYLEY, CAYLEY_INV
from geometry.points import INF, ComplexPoint, as_point
from loewner.types import SlitStep, SwallowedError


def chordal_forward(z, w: float, dcap: float) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, INF, dtype=complex)
    finite = np.isfinite(z)
    zeta = z[finite] - w
    with np.errstate(divide="ignore", invalid="ignore"):
        root = zeta * np.sqrt(1.0 + 4.0 * dcap / (zeta * zeta))
    root = np.where(zeta == 0, 2.0 * np.sqrt(dcap) + 0j, root)
    out[finite] = w + root
    return out


def chordal_inverse(z, w: float, dcap: float) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, INF, dtype=complex)
    finite = np.isfinite(z)
    zeta = z[finite] - w
    with np.errstate(divide="ignore", invalid="ignore"):
        root = zeta * np.sqrt(1.0 - 4.0 * dcap / (zeta * zeta))
    root = np.where(zeta == 0, 2j * np.sqrt(dcap), root)
    root = np.where(root.imag < 0, -root, root)
    out[finite] = w + root
    return out


def chordal_derivative(z, g, w: float) -> np.ndarray:
    """g'(z) = (z - w)/(g(z) - w); 1 at infinity."""
    z = np.asarray(z, dtype=complex)
    g = np.asarray(g, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        d = (z - w) / (g - w)
    return np.where(np.isfinite(z), d, 1.0 + 0j)


def _radial_frame(theta: float, dcap: float):
    rot = -np.exp(-1j * theta)
    h2 = -np.expm1(-dcap)
    s = np.exp(-0.5 * dcap)
    return rot, h2, s


def radial_forward(z, theta: float, dcap: float, with_derivative: bool = False):
    z = np.asarray(z, dtype=complex)
    rot, h2, s = _radial_frame(theta, dcap)
    u = rot * z
    zeta = CAYLEY_INV.apply(u)
    g = chordal_forward(zeta, 0.0, 0.25 * h2)
    v = g / s
    out = CAYLEY.apply(v) / rot
    if not with_derivative:
        return out
    deriv = CAYLEY_INV.derivative(u) * chordal_derivative(zeta, g, 0.0) / s * CAYLEY.derivative(v)
    return out, deriv


def radial_inverse(z, theta: float, dcap: float) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    rot, h2, s = _radial_frame(theta, dcap)
    zeta = CAYLEY_INV.apply(rot * z) * s
    return CAYLEY.apply(chordal_inverse(zeta, 0.0, 0.25 * h2)) / rot


def radial_arc_halfwidth(dcap: float) -> float:
    """Half the boundary arc consumed by a radial step, 2·arctan(sqrt(e^dcap - 1))."""
    return 2.0 * np.arctan(np.sqrt(np.expm1(dcap)))


def radial_step_for_sample(zeta: complex) -> tuple[float, float]:
    """(raw angle, capacity) of the radial slit from the circle to zeta."""
    r = abs(zeta)
    return float(np.angle(zeta)), float(np.log1p((1.0 - r) ** 2 / (4.0 * r)))


def slit_map_forward(step: SlitStep, z: ComplexPoint) -> ComplexPoint:
    """Chordal elementary map on a single point."""
    z = as_point(z)
    if z.at_infinity:
        return z
    height = 2.0 * np.sqrt(step.dcap)
    if abs(z.re - step.w) <= Config.IM_TOL and 0.0 < z.im < height - Config.IM_TOL:
        raise SwallowedError(f"{z} lies on the slit of {step}")
    return ComplexPoint.from_complex(complex(chordal_forward(np.array([z.to_complex()]), step.w, step.dcap)[0]))


def slit_map_inverse(step: SlitStep, z: ComplexPoint) -> ComplexPoint:
    z = as_point(z)
    if z.at_infinity:
        return z
    return ComplexPoint.from_complex(complex(chordal_inverse(np.array([z.to_complex()]), step.w, step.dcap)[0]))
