"""
Möbius transformations of the Riemann sphere
============================================
Maps are stored with coefficients normalised to determinant one. Both a
scalar interface on :class:`ComplexPoint` and a vectorised interface on
complex arrays (``complex(inf, 0)`` encodes infinity) are provided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from config.config import Config
from geometry.points import INF, INFINITY, ComplexPoint, GeometryError, as_point, is_inf


@dataclass(frozen=True)
class MobiusTransform:
    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def make(cls, a: complex, b: complex, c: complex, d: complex) -> "MobiusTransform":
        """Normalise so that ad - bc = 1; degenerate maps raise GeometryError."""
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        scale = max(abs(a), abs(b), abs(c), abs(d)) ** 2
        if scale == 0.0 or abs(det) <= Config.DET_TOL * scale:
            raise GeometryError(f"degenerate Möbius map (det={det})")
        r = np.sqrt(det)
        return cls(a / r, b / r, c / r, d / r)

    @classmethod
    def identity(cls) -> "MobiusTransform":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, z: ComplexPoint | complex) -> ComplexPoint:
        z = as_point(z)
        return ComplexPoint.from_complex(complex(self.apply(np.array([z.to_complex()]))[0]))

    def apply(self, z) -> np.ndarray:
        """Vectorised evaluation; poles map to infinity."""
        z = np.asarray(z, dtype=complex)
        inf = is_inf(z)
        zf = np.where(inf, 0.0, z)
        num = self.a * zf + self.b
        den = self.c * zf + self.d
        pole = np.abs(den) <= 1e-15 * (np.abs(self.c * zf) + abs(self.d))
        with np.errstate(divide="ignore", invalid="ignore"):
            out = num / np.where(pole, 1.0, den)
        out = np.where(pole, INF, out)
        out = np.where(inf, self.a / self.c if self.c != 0 else INF, out)
        return out

    def derivative(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return 1.0 / (self.c * z + self.d) ** 2

    def compose(self, other: "MobiusTransform") -> "MobiusTransform":
        """self ∘ other."""
        m = self.matrix @ other.matrix
        return MobiusTransform.make(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def inverse(self) -> "MobiusTransform":
        return MobiusTransform.make(self.d, -self.b, -self.c, self.a)

    def negated(self) -> "MobiusTransform":
        """z ↦ -m(z)."""
        return MobiusTransform.make(-self.a, -self.b, self.c, self.d)

    @property
    def orientation_reversing(self) -> bool:
        """For maps of the extended real line: True when i lands in the lower half-plane."""
        return complex(self.apply(np.array([1j]))[0]).imag < 0

    def close_to(self, other: "MobiusTransform", tol: float = 1e-10) -> bool:
        """Equality as projective maps (coefficients agree up to sign)."""
        m, n = self.matrix, other.matrix
        return bool(np.allclose(m, n, atol=tol) or np.allclose(m, -n, atol=tol))


def mobius_apply(m: MobiusTransform, z: ComplexPoint) -> ComplexPoint:
    return m(z)


def mobius_compose(m1: MobiusTransform, m2: MobiusTransform) -> MobiusTransform:
    """m1 ∘ m2."""
    return m1.compose(m2)


def _to_zero_inf_one(z1: complex, z2: complex, z3: complex) -> MobiusTransform:
    # z1 -> 0, z2 -> inf, z3 -> 1
    if is_inf(z1):
        return MobiusTransform.make(0, z3 - z2, 1, -z2)
    if is_inf(z2):
        return MobiusTransform.make(1, -z1, 0, z3 - z1)
    if is_inf(z3):
        return MobiusTransform.make(1, -z1, 1, -z2)
    return MobiusTransform.make(z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1))


def mobius_from_points(src, dst) -> MobiusTransform:
    """Unique map sending src[k] -> dst[k] for three distinct points each."""
    zs = [as_point(p).to_complex() for p in src]
    ws = [as_point(p).to_complex() for p in dst]
    if len(zs) != 3 or len(ws) != 3:
        raise GeometryError("three source and three target points are required")
    s = _to_zero_inf_one(*zs)
    t = _to_zero_inf_one(*ws)
    return t.inverse().compose(s)


CAYLEY = MobiusTransform.make(1, -1j, 1, 1j)
CAYLEY_INV = MobiusTransform.make(1j, 1j, -1, 1)


def cayley(z: ComplexPoint) -> ComplexPoint:
    """Half-plane to disc, z ↦ (z - i)/(z + i); infinity ↦ 1."""
    return CAYLEY(z)


def cayley_inv(w: ComplexPoint) -> ComplexPoint:
    return CAYLEY_INV(w)


def cayley_array(z) -> np.ndarray:
    return CAYLEY.apply(z)


def cayley_inv_array(w) -> np.ndarray:
    return CAYLEY_INV.apply(w)


def cdist(z: ComplexPoint, w: ComplexPoint) -> float:
    """Chordal-type distance |φ(z) - φ(w)| on the closed half-plane."""
    return abs(cayley(z).to_complex() - cayley(w).to_complex())


def cdist_array(z, w) -> np.ndarray:
    return np.abs(cayley_array(z) - cayley_array(w))


def psi_interior(x: ComplexPoint) -> MobiusTransform:
    """Half-plane automorphism sending x to i (a translation and a dilation)."""
    x = as_point(x)
    if x.at_infinity or x.im <= 0:
        raise GeometryError(f"interior point required, got {x}")
    return MobiusTransform.make(1, -x.re, 0, x.im)


def psi_boundary(x: ComplexPoint) -> MobiusTransform:
    """Map sending the boundary point x to infinity while fixing ±1.

    For ``x = ±1`` the fixed pair is replaced by the normalisations
    ``(z+1)/(z-1)`` and ``(z-1)/(z+1)``. For ``|x| < 1`` the interpolant
    ``(1 - xz)/(z - x)`` reverses the orientation of the half-plane; see
    :func:`chordal_transport` for the orientation-preserving version.
    """
    x = as_point(x)
    if x.at_infinity:
        return MobiusTransform.identity()
    if abs(x.im) > Config.IM_TOL:
        raise GeometryError(f"boundary point required, got {x}")
    r = x.re
    if abs(r - 1.0) <= Config.ENDPOINT_TOL:
        return MobiusTransform.make(1, 1, 1, -1)
    if abs(r + 1.0) <= Config.ENDPOINT_TOL:
        return MobiusTransform.make(1, -1, 1, 1)
    return MobiusTransform.make(-r, 1, 1, -r)


def chordal_transport(x: ComplexPoint) -> MobiusTransform:
    """Half-plane automorphism sending the boundary point x to infinity."""
    m = psi_boundary(x)
    return m.negated() if m.orientation_reversing else m


def radial_transport(x: ComplexPoint) -> MobiusTransform:
    """Half-plane to disc with x ↦ 0."""
    return CAYLEY.compose(psi_interior(x))


def viewpoint_transport(x: ComplexPoint) -> MobiusTransform:
    """Frame used by the zippers: radial_transport inside, chordal_transport on the boundary."""
    x = as_point(x)
    if x.is_boundary(Config.IM_TOL):
        return chordal_transport(x)
    return radial_transport(x)


def hyperbolic_fixing_pm1(a: float) -> MobiusTransform:
    """Half-plane automorphism fixing ±1: (z cosh a + sinh a)/(z sinh a + cosh a)."""
    return MobiusTransform.make(np.cosh(a), np.sinh(a), np.sinh(a), np.cosh(a))


__all__ = [
    "CAYLEY",
    "CAYLEY_INV",
    "INF",
    "INFINITY",
    "MobiusTransform",
    "cayley",
    "cayley_array",
    "cayley_inv",
    "cayley_inv_array",
    "cdist",
    "cdist_array",
    "chordal_transport",
    "hyperbolic_fixing_pm1",
    "mobius_apply",
    "mobius_compose",
    "mobius_from_points",
    "psi_boundary",
    "psi_interior",
    "radial_transport",
    "viewpoint_transport",
]
