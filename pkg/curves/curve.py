"""
Sampled curves in the closed half-plane or the closed disc
==========================================================
A :class:`Curve` is an ordered polyline with a strictly increasing parameter
in [0, 1]. Distances between curves are always taken in disc coordinates,
so half-plane curves are pushed through the Cayley map and disc curves are
used as they are.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

import numpy as np

from config.config import Config
from geometry.mobius import cayley_array, cayley_inv_array
from geometry.points import INF, ComplexPoint, is_inf

logger = logging.getLogger(__name__)

Domain = Literal["half_plane", "disc"]


class CurveError(ValueError):
    """Malformed curve or incompatible curve operation."""


@dataclass(frozen=True, eq=False)
class Curve:
    points: np.ndarray
    params: np.ndarray
    domain: Domain = "half_plane"

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=complex).ravel().copy()
        pts[is_inf(pts)] = INF
        if self.params is None:
            prm = np.linspace(0.0, 1.0, len(pts)) if len(pts) > 1 else np.zeros(len(pts))
        else:
            prm = np.asarray(self.params, dtype=float).ravel().copy()
        if len(prm) != len(pts):
            raise CurveError(f"{len(pts)} points but {len(prm)} parameters")
        if self.domain not in ("half_plane", "disc"):
            raise CurveError(f"unknown domain {self.domain!r}")

        if len(pts) == 0:
            raise CurveError("a curve needs at least two distinct samples")
        keep = np.ones(len(pts), dtype=bool)
        keep[1:] = pts[1:] != pts[:-1]
        prm[np.flatnonzero(keep)[-1]] = prm[-1]
        pts, prm = pts[keep], prm[keep]
        if len(pts) < 2:
            raise CurveError("a curve needs at least two distinct samples")
        if np.any(np.diff(prm) <= 0):
            raise CurveError("parameters must be strictly increasing")
        if abs(prm[0]) > 1e-12 or abs(prm[-1] - 1.0) > 1e-12:
            raise CurveError(f"parameters must run from 0 to 1, got [{prm[0]}, {prm[-1]}]")
        prm[0], prm[-1] = 0.0, 1.0

        finite = ~is_inf(pts)
        if self.domain == "half_plane":
            if np.any(pts[finite].imag < -Config.IM_TOL):
                raise CurveError("half-plane curve has samples below the real line")
        else:
            if not np.all(finite) or np.any(np.abs(pts) > 1.0 + Config.IM_TOL):
                raise CurveError("disc curve has samples outside the closed unit disc")

        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "params", prm)

    @classmethod
    def from_points(cls, points, domain: Domain = "half_plane", params=None) -> "Curve":
        return cls(np.asarray(points, dtype=complex), params, domain)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def start(self) -> ComplexPoint:
        return ComplexPoint.from_complex(self.points[0])

    @property
    def end(self) -> ComplexPoint:
        return ComplexPoint.from_complex(self.points[-1])

    def disc_points(self) -> np.ndarray:
        """Samples in disc coordinates (the frame used by every distance)."""
        return self.points if self.domain == "disc" else cayley_array(self.points)

    def half_plane_points(self) -> np.ndarray:
        return self.points if self.domain == "half_plane" else cayley_inv_array(self.points)

    def to_half_plane(self) -> "Curve":
        if self.domain == "half_plane":
            return self
        return Curve(cayley_inv_array(self.points), self.params, "half_plane")

    def arclength(self, metric: Literal["euclidean", "cdist"] = "euclidean") -> np.ndarray:
        """Cumulative length at each sample."""
        pts = self.disc_points() if metric == "cdist" else self.points
        if np.any(is_inf(pts)):
            raise CurveError("euclidean arclength is undefined through infinity")
        return np.concatenate(([0.0], np.cumsum(np.abs(np.diff(pts)))))

    def param_at(self, t: float) -> int:
        """Index of the last sample with parameter <= t."""
        return int(np.searchsorted(self.params, t, side="right") - 1)


def reverse(c: Curve) -> Curve:
    return Curve(c.points[::-1], 1.0 - c.params[::-1], c.domain)


def concat(c1: Curve, c2: Curve) -> Curve:
    """Join c1 then c2; the shared endpoint is stored once."""
    if c1.domain != c2.domain:
        raise CurveError(f"cannot join a {c1.domain} curve to a {c2.domain} curve")
    gap = abs(c1.disc_points()[-1] - c2.disc_points()[0])
    if gap > Config.ENDPOINT_TOL:
        raise CurveError(f"endpoint mismatch: cdist(end, start) = {gap:.3e}")
    pts = np.concatenate((c1.points, c2.points[1:]))
    prm = np.concatenate((0.5 * c1.params, 0.5 + 0.5 * c2.params[1:]))
    return Curve(pts, prm, c1.domain)


def resample(c: Curve, n: int) -> Curve:
    """n samples equally spaced in euclidean arclength."""
    if n < 2:
        raise CurveError("resample needs n >= 2")
    s = c.arclength()
    target = np.linspace(0.0, s[-1], n)
    re = np.interp(target, s, c.points.real)
    im = np.interp(target, s, c.points.imag)
    prm = np.interp(target, s, c.params)
    return Curve(re + 1j * im, prm, c.domain)


def densify(c: Curve, max_gap: float, metric: Literal["euclidean", "cdist"] = "euclidean") -> Curve:
    """Subdivide segments until consecutive samples are at most max_gap apart."""
    if max_gap <= 0:
        raise CurveError("max_gap must be positive")
    pts = c.disc_points() if metric == "cdist" else c.points
    if np.any(is_inf(pts)):
        raise CurveError("cannot densify through infinity")
    pieces = np.maximum(1, np.ceil(np.abs(np.diff(pts)) / max_gap).astype(int))
    out_pts = [c.points[:1]]
    out_prm = [c.params[:1]]
    for k, m in enumerate(pieces):
        u = np.arange(1, m + 1) / m
        out_pts.append(c.points[k] + u * (c.points[k + 1] - c.points[k]))
        out_prm.append(c.params[k] + u * (c.params[k + 1] - c.params[k]))
    return Curve(np.concatenate(out_pts), np.concatenate(out_prm), c.domain)


def polyline(vertices, samples_per_unit: int | None, domain: Domain = "half_plane") -> Curve:
    """Curve through the vertices, optionally densified to samples_per_unit."""
    c = Curve.from_points(np.asarray(vertices, dtype=complex), domain)
    if samples_per_unit:
        c = densify(c, 1.0 / samples_per_unit)
    return c


def _orient(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> np.ndarray:
    return np.sign((q - p).real * (r - p).imag - (q - p).imag * (r - p).real)


def _on_segment(p, q, r) -> np.ndarray:
    # r collinear with p, q and inside their bounding box
    return (
        (np.minimum(p.real, q.real) <= r.real) & (r.real <= np.maximum(p.real, q.real))
        & (np.minimum(p.imag, q.imag) <= r.imag) & (r.imag <= np.maximum(p.imag, q.imag))
    )


def is_simple(c: Curve, block: int = 256) -> bool:
    """No two non-adjacent segments of the polyline meet."""
    pts = c.points
    if np.any(is_inf(pts)):
        raise CurveError("simplicity test needs finite samples")
    a, b = pts[:-1], pts[1:]
    m = len(a)
    for i0 in range(0, m, block):
        i = np.arange(i0, min(i0 + block, m))[:, None]
        j = np.arange(m)[None, :]
        pair = j > i + 1
        if len(pts) > 2 and pts[0] == pts[-1]:
            pair &= ~((i == 0) & (j == m - 1))
        p1, q1 = a[i], b[i]
        p2, q2 = a[j], b[j]
        o1, o2 = _orient(p1, q1, p2), _orient(p1, q1, q2)
        o3, o4 = _orient(p2, q2, p1), _orient(p2, q2, q1)
        proper = (o1 * o2 < 0) & (o3 * o4 < 0)
        touch = (
            ((o1 == 0) & _on_segment(p1, q1, p2)) | ((o2 == 0) & _on_segment(p1, q1, q2))
            | ((o3 == 0) & _on_segment(p2, q2, p1)) | ((o4 == 0) & _on_segment(p2, q2, q1))
        )
        hit = pair & (proper | touch)
        if np.any(hit):
            k, l = np.argwhere(hit)[0]
            logger.debug("segments %d and %d intersect", i0 + k, l)
            return False
    return True
