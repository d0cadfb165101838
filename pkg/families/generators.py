"""
Curve families
==============
Approximating sequences whose limits separate the curve metrics:

* ``gen_ladder``: zig-zags collapsing onto the imaginary axis.
* ``gen_three_segment``: a triple pass in the disc, plain or doubled.
* ``gen_dyadic_loops``: clockwise loops hung off a segment at dyadic points.
* ``gen_hooks``: a closing channel carrying nested hooks and open loops.
* ``gen_figure_eight``: two lobes and two inner loops visited in either order.
* ``gen_half_strip``: the half-strip curves that dip below height one.
* ``gen_perturbed_semicircle``: semicircles with a shrinking wobble.

Every generator returns a ``Curve``; polylines are densified to
``samples_per_unit`` when it is given. Approximants that are meant to be
simple are checked with ``is_simple`` before densification.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from config.config import Config
from curves.curve import Curve, concat, densify, is_simple, polyline
from families.spec import FamilyError

logger = logging.getLogger(__name__)

# hooks channel
HOOK_BOTTOM = 0.5
HOOK_TOP = 3.0
HOOK_LOOP_SCALE = 1.0
# figure eight
LOBE_OFFSET = 0.6
INNER_OFFSET = 0.3
INNER_RADIUS = 0.18
FIG_CENTER = 1.5


def _finish(vertices, samples_per_unit: int | None, domain: str = "half_plane", check: bool = True,
            name: str = "curve") -> Curve:
    c = Curve.from_points(np.asarray(vertices, dtype=complex), domain)
    if check and not is_simple(c):
        raise FamilyError(f"{name} is not simple")
    if samples_per_unit:
        c = densify(c, 1.0 / samples_per_unit)
    return c


# ---------------------------------------------------------------------------
# ladder, half strip, semicircle
# ---------------------------------------------------------------------------

def gen_ladder(j: int, n_max: int | None = None, height: float | None = None,
               samples_per_unit: int | None = None) -> Curve:
    """Ladder 0, z1, w1, z2, ... scaled by 2^-j with z_n = (-1)^n + in, w_n = in/2.

    ``height`` truncates after the last rung below it; otherwise ``n_max``
    rungs are used (default max(4j, 2)). The curve ends at its highest rung.
    """
    s = 2.0 ** -j
    if height is not None:
        n_top = max(2, int(np.floor(height / s)))
    else:
        n_top = n_max if n_max is not None else max(4 * j, 2)
    if n_top < 1:
        raise FamilyError("ladder needs at least one rung")
    verts = [0j]
    for n in range(1, n_top + 1):
        verts.append(s * ((-1) ** n + 1j * n))
        if n < n_top:
            verts.append(s * 0.5j * n)
    return _finish(verts, samples_per_unit, name="ladder")


def ladder_target(j: int, height: float | None = None, samples_per_unit: int | None = None) -> Curve:
    """Segment of the imaginary axis matching the height of ``gen_ladder(j, height=...)``."""
    top = gen_ladder(j, height=height).points[-1].imag
    return polyline([0j, 1j * top], samples_per_unit)


def gen_half_strip(k: int, samples_per_unit: int | None = None) -> Curve:
    """η_k: 0, z1, w1, ..., z_k with z_n = (-1)^n + in and w_n = i(1 - 2^-n)."""
    if k < 1:
        raise FamilyError("half-strip index must be >= 1")
    verts = [0j]
    for n in range(1, k + 1):
        verts.append((-1) ** n + 1j * n)
        if n < k:
            verts.append(1j * (1.0 - 2.0 ** -n))
    return _finish(verts, samples_per_unit, name="half-strip curve")


def gen_perturbed_semicircle(j: int, amplitude: float = 0.5, mode: int = 3,
                             samples_per_unit: int | None = None) -> Curve:
    """(1 + A 2^-j sin(mθ)) e^{i(π-θ)} for θ in [0, π], from -1 to 1."""
    n = max(64, int(np.ceil(np.pi * (samples_per_unit or Config.SAMPLES_PER_UNIT))))
    theta = np.linspace(0.0, np.pi, n + 1)
    r = 1.0 + amplitude * 2.0 ** -j * np.sin(mode * theta)
    pts = r * np.exp(1j * (np.pi - theta))
    pts[0], pts[-1] = -1.0, 1.0
    return Curve(pts, theta / np.pi, "half_plane")


# ---------------------------------------------------------------------------
# three segment (disc)
# ---------------------------------------------------------------------------

def gen_three_segment(j: int, variant: str = "plain", samples_per_unit: int | None = None) -> Curve:
    """Disc curve from -1 to 1 crossing the disc three times near the imaginary axis.

    With ``d = 2^-(j+2)``, ``plain`` turns at ±(1-d)i. ``doubled`` runs down
    at Re z = d, climbs back at Re z = 0 and descends again at Re z = -d,
    then slips under the first descent to reach 1. The doubled-back strands
    stay in pockets that open near -i going forward and near i going backward. ``interweave`` alternates by parity.
    """
    if j < 1:
        raise FamilyError("three-segment index must be >= 1")
    if variant == "interweave":
        variant = "plain" if j % 2 else "doubled"
    d = 2.0 ** -(j + 2)
    a, b, c = 1.0 - d, 1.0 - 4.0 * d, 1.0 - 0.5 * d
    if variant == "plain":
        verts = [-1, a * 1j, -a * 1j, 1]
    elif variant == "doubled":
        verts = [-1, d + a * 1j, d - a * 1j, -b * 1j, b * 1j, -d + b * 1j, -d - c * 1j, 2 * d - c * 1j, 1]
    else:
        raise FamilyError(f"unknown three-segment variant {variant!r}")
    return _finish(verts, samples_per_unit, domain="disc", name="three-segment curve")


# ---------------------------------------------------------------------------
# loops
# ---------------------------------------------------------------------------

def _loop_arc(p: complex, direction: complex, radius: float, gap: float, n: int) -> np.ndarray:
    """Clockwise loop on the left of travel, leaving the base at p - gap and returning at p + gap.

    ``gap = 0`` closes the loop at p.
    """
    d = direction / abs(direction)
    normal = 1j * d
    th = np.arcsin(min(gap / radius, 0.5)) if gap > 0 else 0.0
    center = p + normal * radius * np.cos(th)
    a0 = np.angle(-normal)
    ang = np.linspace(a0 - th, a0 - 2.0 * np.pi + th, n + 1)
    pts = center + radius * np.exp(1j * ang)
    if gap > 0:
        pts[0], pts[-1] = p - d * radius * np.sin(th), p + d * radius * np.sin(th)
    else:
        pts[0] = pts[-1] = p
    return pts


def _arc_samples(radius: float, samples_per_unit: int | None) -> int:
    return max(16, int(np.ceil(2.0 * np.pi * radius * (samples_per_unit or Config.SAMPLES_PER_UNIT))))


def dyadic_positions(depth: int) -> List[Tuple[int, float]]:
    """(level k, position (2m+1)/2^k) for k = 1..depth."""
    return [(k, (2 * m + 1) / 2.0 ** k) for k in range(1, depth + 1) for m in range(2 ** (k - 1))]


def _check_disjoint(centers: np.ndarray, radii: np.ndarray) -> None:
    if len(centers) < 2:
        return
    tree = cKDTree(np.column_stack([centers.real, centers.imag]))
    for i, k in tree.query_pairs(2.0 * radii.max()):
        if abs(centers[i] - centers[k]) <= radii[i] + radii[k]:
            raise FamilyError("loop_scale too large: dyadic loops overlap")


def gen_dyadic_loops(depth: int, base: Tuple[complex, complex] = (0.0, 1.0), loop_scale: float = 0.5,
                     samples_per_unit: int | None = None) -> Curve:
    """Segment with a clockwise loop of radius loop_scale·4^-k at each level-k dyadic point.

    Time is split in thirds recursively: the first half of a sub-segment
    runs in the first third, its midpoint loop in the middle third.
    """
    if not 1 <= depth <= 12:
        raise FamilyError("depth must be in 1..12")
    u0, u1 = complex(base[0]), complex(base[1])
    length = abs(u1 - u0)
    if loop_scale >= length:
        raise FamilyError("loop_scale must be smaller than the base length")
    direction = u1 - u0
    spu = samples_per_unit or Config.SAMPLES_PER_UNIT

    def at(u: float) -> complex:
        return u0 + u * direction

    centers, radii = [], []

    def build(a: float, b: float, t0: float, t1: float, k: int) -> Tuple[np.ndarray, np.ndarray]:
        if k > depth:
            m = max(1, int(np.ceil((b - a) * length * spu)))
            u = np.linspace(a, b, m + 1)
            return at(u), np.linspace(t0, t1, m + 1)
        mid = 0.5 * (a + b)
        ta, tb = t0 + (t1 - t0) / 3.0, t0 + 2.0 * (t1 - t0) / 3.0
        lp, lt = build(a, mid, t0, ta, k + 1)
        r = loop_scale * 4.0 ** -k
        loop = _loop_arc(at(mid), direction, r, 0.0, _arc_samples(r, spu))
        centers.append(at(mid) + 1j * direction / length * r)
        radii.append(r)
        rp, rt = build(mid, b, tb, t1, k + 1)
        pts = np.concatenate([lp, loop[1:], rp[1:]])
        prm = np.concatenate([lt, np.linspace(ta, tb, len(loop))[1:], rt[1:]])
        return pts, prm

    pts, prm = build(0.0, 1.0, 0.0, 1.0, 1)
    _check_disjoint(np.asarray(centers), np.asarray(radii))
    logger.debug("dyadic loops: depth=%d, %d loops, %d samples", depth, len(radii), len(pts))
    return Curve(pts, prm, "half_plane")


# ---------------------------------------------------------------------------
# hooks
# ---------------------------------------------------------------------------

def _hook_left(w: float, y: float, a: float, b: float, bottom: float, e: float) -> List[complex]:
    return [complex(-w, y - e), complex(a - e, y - e), complex(a - e, bottom - e), complex(b + e, bottom - e),
            complex(b + e, y), complex(b - e, y), complex(b - e, bottom + e), complex(a + e, bottom + e),
            complex(a + e, y + e), complex(-w, y + e)]


def _hook_right(w: float, y: float, c: float, d: float, bottom: float, e: float) -> List[complex]:
    return [complex(w, y + e), complex(c - e, y + e), complex(c - e, bottom + e), complex(d + e, bottom + e),
            complex(d + e, y), complex(d - e, y), complex(d - e, bottom - e), complex(c + e, bottom - e),
            complex(c + e, y - e), complex(w, y - e)]


def _wall_events(hooks: Sequence[Tuple[float, List[complex], float]],
                 loops: Sequence[Tuple[float, float]], e: float) -> List[Tuple[float, float, object]]:
    """Merge hook bands and loop attachments along one wall, moving loops off the bands."""
    events = [(y, half, pts) for y, pts, half in hooks]
    bands = [(y - half, y + half) for y, _, half in hooks]
    for h, r in loops:
        g = min(0.25 * r, e)
        for lo, hi in bands:
            if lo - 2.0 * g <= h <= hi + 2.0 * g:
                h = hi + 3.0 * g
        events.append((h, g, r))
    events.sort(key=lambda ev: ev[0])
    for (h0, g0, _), (h1, g1, _) in zip(events, events[1:]):
        if h0 + g0 >= h1 - g1:
            raise FamilyError("hook and loop attachments collide")
    return events


def gen_hooks(j: int, loop_depth: int = 4, samples_per_unit: int | None = None) -> Curve:
    """Channel of half-width 2^-j-1 carrying j nested hooks per side and dyadic loops outside.

    The curve runs from -1 up the left wall (hooks hang right, loops left),
    across the top, down the right wall (hooks hang left, loops right) and
    on to 1. Left hooks start at heights in (1.6, 2.2) and nest inward;
    right hooks start in (2.3, 2.9) inside the innermost left hook and nest
    outward. All hooks reach below height 1.5.
    """
    if j < 1:
        raise FamilyError("hooks index must be >= 1")
    K = j
    w = 2.0 ** (-j - 1)
    lane = 2.0 * w / (4 * K + 1)
    e = lane / 4.0

    def x(idx: int) -> float:
        return -w + (idx + 1) * lane

    left_hooks, right_hooks = [], []
    for k in range(1, K + 1):
        y = 1.6 + 0.6 * k / (K + 1)
        bottom = 1.0 + 0.2 * k / (K + 1)
        a, b = x(k - 1), x(3 * K + (K - k))
        left_hooks.append((y, _hook_left(w, y, a, b, bottom, e), e))
    for m in range(1, K + 1):
        y = 2.9 - 0.6 * m / (K + 1)
        bottom = 1.45 - 0.2 * m / (K + 1)
        c, d = x(2 * K + m - 1), x(K + (K - m))
        right_hooks.append((y, _hook_right(w, y, c, d, bottom, e), e))

    depth = min(j, loop_depth)
    span = HOOK_TOP - HOOK_BOTTOM
    loops = [(HOOK_BOTTOM + span * u, HOOK_LOOP_SCALE * 4.0 ** -k) for k, u in dyadic_positions(depth)]
    spu = samples_per_unit or Config.SAMPLES_PER_UNIT

    pts: List[complex] = [complex(-1.0, 0.0), complex(-w, HOOK_BOTTOM)]
    for h, g, payload in _wall_events(left_hooks, loops, e):
        if isinstance(payload, list):
            pts.extend(payload)
        else:
            pts.extend(_loop_arc(complex(-w, h), 1j, payload, g, _arc_samples(payload, spu)))
    pts += [complex(-w, HOOK_TOP), complex(w, HOOK_TOP)]
    for h, g, payload in reversed(_wall_events(right_hooks, loops, e)):
        if isinstance(payload, list):
            pts.extend(payload)
        else:
            pts.extend(_loop_arc(complex(w, h), -1j, payload, g, _arc_samples(payload, spu)))
    pts += [complex(w, HOOK_BOTTOM), complex(1.0, 0.0)]
    logger.debug("hooks j=%d: %d hooks per side, loop depth %d", j, K, depth)
    return _finish(pts, samples_per_unit, name=f"hooks approximant j={j}")


def hooks_limit(loop_depth: int = 4, samples_per_unit: int | None = None) -> Curve:
    """Limit of the hooks family: up and down the segment [0.5i, 3i] with closed loops on both sides."""
    lead = polyline([-1.0, HOOK_BOTTOM * 1j], samples_per_unit)
    up = gen_dyadic_loops(loop_depth, (HOOK_BOTTOM * 1j, HOOK_TOP * 1j), HOOK_LOOP_SCALE, samples_per_unit)
    down = gen_dyadic_loops(loop_depth, (HOOK_TOP * 1j, HOOK_BOTTOM * 1j), HOOK_LOOP_SCALE, samples_per_unit)
    tail = polyline([HOOK_BOTTOM * 1j, 1.0], samples_per_unit)
    return concat(concat(lead, up), concat(down, tail))


# ---------------------------------------------------------------------------
# figure eight
# ---------------------------------------------------------------------------

def _inner_loop(name: str, y_in: float, y_out: float, n: int) -> np.ndarray:
    """Inner loop l (attached on its right side, counterclockwise) or r (left side, clockwise)."""
    s_in = np.arcsin(y_in / INNER_RADIUS)
    s_out = np.arcsin(y_out / INNER_RADIUS)
    if name == "l":
        center = complex(-INNER_OFFSET, FIG_CENTER)
        ang = np.linspace(s_in, 2.0 * np.pi + s_out, n + 1)
    else:
        center = complex(INNER_OFFSET, FIG_CENTER)
        ang = np.linspace(np.pi - s_in, -np.pi - s_out, n + 1)
    return center + INNER_RADIUS * np.exp(1j * ang)


def gen_figure_eight(j: int, variant: str = "a", omit: str | None = None,
                     samples_per_unit: int | None = None) -> Curve:
    """Two lobes pinched at 1.5i with inner loops l, r visited in order l r (``a``) or r l (``b``).

    The lobes have gaps of width ~2^-j; the strands between the inner loops
    run at heights ±2^-j/10 and 1.5 through those gaps. ``omit`` drops one
    inner loop; the limits of the two driving directions are built this way.
    """
    if j < 1:
        raise FamilyError("figure-eight index must be >= 1")
    if variant == "interweave":
        variant = "a" if j % 2 else "b"
    order = {"a": ["l", "r"], "b": ["r", "l"]}.get(variant)
    if order is None:
        raise FamilyError(f"unknown figure-eight variant {variant!r}")
    if omit is not None:
        order = [o for o in order if o != omit]
    a = 0.1 * 2.0 ** -j
    rho = LOBE_OFFSET - a
    spu = samples_per_unit or Config.SAMPLES_PER_UNIT
    n_lobe = _arc_samples(rho, spu)
    n_inner = _arc_samples(INNER_RADIUS, spu)
    cl = complex(-LOBE_OFFSET, FIG_CENTER)
    cr = complex(LOBE_OFFSET, FIG_CENTER)
    t1, t2 = np.arcsin(a / rho), np.arcsin(2.0 * a / rho)

    lobe_l = cl + rho * np.exp(1j * np.linspace(-t2, -2.0 * np.pi + t1, n_lobe + 1))   # clockwise
    lobe_r = cr + rho * np.exp(1j * np.linspace(np.pi + t1, 3.0 * np.pi - t2, n_lobe + 1))   # counterclockwise
    start = lobe_l[0]
    finish = lobe_r[-1]

    heights = {1: [(a, -a)], 2: [(a, 0.0), (0.0, -a)]}.get(len(order), [])
    pts: List[complex] = [complex(-1.0, 0.0), complex(start.real, 0.5)]
    pts.extend(lobe_l)
    for name, (y_in, y_out) in zip(order, heights):
        pts.extend(_inner_loop(name, y_in, y_out, n_inner))
    pts.extend(lobe_r)
    pts += [complex(finish.real, 2.5), complex(1.6, 2.5), complex(1.6, 0.3), complex(1.0, 0.0)]
    return _finish(pts, samples_per_unit, name=f"figure eight j={j}")


def figure_eight_limits(j: int, samples_per_unit: int | None = None) -> Tuple[Curve, Curve]:
    """Stand-ins for the forward and backward limits: variant ``a`` without l, and without r."""
    return (gen_figure_eight(j, "a", omit="l", samples_per_unit=samples_per_unit),
            gen_figure_eight(j, "a", omit="r", samples_per_unit=samples_per_unit))
