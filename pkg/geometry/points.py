"""
Points of the Riemann sphere
============================
Scalars carry an explicit ``at_infinity`` flag. Arrays encode infinity as
``complex(inf, 0)`` and are tested with :func:`is_inf`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INF = complex(np.inf, 0.0)


class GeometryError(ValueError):
    """Invalid geometric input (degenerate map, point outside the domain)."""


@dataclass(frozen=True)
class ComplexPoint:
    re: float = 0.0
    im: float = 0.0
    at_infinity: bool = False

    def __post_init__(self) -> None:
        if self.at_infinity:
            object.__setattr__(self, "re", 0.0)
            object.__setattr__(self, "im", 0.0)
        elif not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise GeometryError(f"non-finite coordinates ({self.re}, {self.im}); use at_infinity")

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexPoint":
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            return INFINITY
        return cls(z.real, z.imag)

    @classmethod
    def infinity(cls) -> "ComplexPoint":
        return cls(at_infinity=True)

    def to_complex(self) -> complex:
        return INF if self.at_infinity else complex(self.re, self.im)

    def is_boundary(self, tol: float = 1e-12) -> bool:
        """On the extended real line."""
        return self.at_infinity or abs(self.im) <= tol

    def is_interior(self, tol: float = 1e-12) -> bool:
        return not self.at_infinity and self.im > tol

    def __str__(self) -> str:
        return "inf" if self.at_infinity else f"{self.re:+.6g}{self.im:+.6g}i"


INFINITY = ComplexPoint(at_infinity=True)
ZERO = ComplexPoint(0.0, 0.0)
ONE = ComplexPoint(1.0, 0.0)
MINUS_ONE = ComplexPoint(-1.0, 0.0)
I = ComplexPoint(0.0, 1.0)


def as_point(z: ComplexPoint | complex | float) -> ComplexPoint:
    if isinstance(z, ComplexPoint):
        return z
    return ComplexPoint.from_complex(complex(z))


def is_inf(z: np.ndarray) -> np.ndarray:
    """Mask of entries encoding the point at infinity."""
    return ~np.isfinite(np.asarray(z, dtype=complex))


def as_array(z) -> np.ndarray:
    """Complex array view of scalars, sequences or ComplexPoint lists."""
    if isinstance(z, ComplexPoint):
        return np.array([z.to_complex()])
    if isinstance(z, (list, tuple)) and z and isinstance(z[0], ComplexPoint):
        return np.array([p.to_complex() for p in z], dtype=complex)
    arr = np.asarray(z, dtype=complex)
    arr = arr.copy()
    arr[is_inf(arr)] = INF
    return arr
