"""Distances between sampled curves, measured in disc coordinates."""

import numpy as np
from numba import njit
from scipy.spatial.distance import cdist

from curves.curve import Curve, CurveError

__all__ = [
    "hausdorff_distance",
    "uniform_distance",
]


def _planar(c: Curve) -> np.ndarray:
    z = c.disc_points()
    return np.column_stack((z.real, z.imag))


def hausdorff_distance(c1: Curve, c2: Curve) -> float:
    """Symmetric Hausdorff distance between the two sample sets.

    Parameters
    ----------
    c1, c2 : Curve
        Curves in either domain; half-plane samples go through the Cayley map.

    Returns
    -------
    dist : float
        ``max(sup_p inf_q, sup_q inf_p)`` of the disc-coordinate distances.
    """
    dist = cdist(_planar(c1), _planar(c2))
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def uniform_distance(c1: Curve, c2: Curve) -> float:
    """Discrete Fréchet distance between the sample sequences.

    Parameters
    ----------
    c1, c2 : Curve
        Curves in either domain. Parameter values are ignored, so the result
        is invariant under reparametrisation.

    Returns
    -------
    dist : float
        Minimum over monotone couplings of the largest coupled distance.

    Raises
    ------
    CurveError
        If either curve has no samples.

    Examples
    --------
    A segment against its reverse couples the endpoints crosswise:

    >>> seg = Curve.from_points([-1, 1])
    >>> round(uniform_distance(seg, Curve.from_points([1, -1])), 12)
    2.0
    """
    if len(c1) == 0 or len(c2) == 0:
        raise CurveError("curves must not be empty")
    return float(_dfd(cdist(_planar(c1), _planar(c2)))[-1, -1])


@njit(cache=True)
def _dfd(dist):
    p, q = dist.shape
    ret = np.empty((p, q), dtype=np.float64)

    ret[0, 0] = dist[0, 0]
    for i in range(1, p):
        ret[i, 0] = max(ret[i - 1, 0], dist[i, 0])
    for j in range(1, q):
        ret[0, j] = max(ret[0, j - 1], dist[0, j])
    for i in range(1, p):
        for j in range(1, q):
            ret[i, j] = max(min(ret[i - 1, j], ret[i, j - 1], ret[i - 1, j - 1]), dist[i, j])
    return ret
