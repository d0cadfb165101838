"""
Driving-function distances
==========================
``d_cap_r``/``d_cap_l`` compare the driving functions seen from a viewpoint x
(radial for interior x, chordal for boundary x) as ``|T1 - T2|`` plus the sup
norm of the stopped drivings. ``d_locally_uniform`` compares the chordal
drivings toward the terminal point (forward) or the initial point (backward).
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from config.config import Config
from curves.curve import Curve, reverse
from geometry.points import MINUS_ONE, ONE, ComplexPoint
from loewner.types import DrivingFunction
from loewner.unzip import unzip_chordal_chain, unzip_radial_at

logger = logging.getLogger(__name__)


class MetricReport(BaseModel):
    """Value of a driving-function distance and its two terms."""

    metric: str = "d_cap_r"
    value: float
    cap_term: float = 0.0
    sup_term: float = 0.0
    grid_size: int = 0
    meta: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _components_add_up(self) -> "MetricReport":
        if self.metric.startswith("d_cap") and abs(self.value - self.cap_term - self.sup_term) > 1e-12:
            raise ValueError("value must equal cap_term + sup_term")
        return self

    def __float__(self) -> float:
        return self.value


def align_branch(W1: DrivingFunction, W2: DrivingFunction) -> DrivingFunction:
    """Shift a radial W2 by a multiple of 2π so its start is nearest W1's."""
    if W2.kind != "radial":
        return W2
    k = np.round((W1.w0 - W2.w0) / (2.0 * np.pi))
    return W2.shifted(2.0 * np.pi * k) if k else W2


def driving_distance(W1: DrivingFunction, W2: DrivingFunction, metric: str = "d_cap_r") -> MetricReport:
    """|T1 - T2| + sup_t |W1(t ∧ T1) - W2(t ∧ T2)| on the merged sample grid."""
    if W1.kind != W2.kind:
        raise ValueError(f"cannot compare {W1.kind} and {W2.kind} driving functions")
    W2 = align_branch(W1, W2)
    grid = np.union1d(W1.times, W2.times)
    sup = float(np.max(np.abs(W1(grid) - W2(grid))))
    cap = abs(W1.T - W2.T)
    return MetricReport(metric=metric, value=cap + sup, cap_term=cap, sup_term=sup, grid_size=len(grid))


def d_cap_r(c1: Curve, c2: Curve, x: ComplexPoint) -> MetricReport:
    """Distance between the driving functions of c1 and c2 seen from x."""
    report = driving_distance(unzip_radial_at(c1, x), unzip_radial_at(c2, x), "d_cap_r")
    report.meta["x"] = [x.re, x.im] if not x.at_infinity else "inf"
    return report


def d_cap_l(c1: Curve, c2: Curve, x: ComplexPoint) -> MetricReport:
    """d_cap_r for curves already oriented from 1 to -1 (callers reverse explicitly)."""
    report = driving_distance(unzip_radial_at(c1, x), unzip_radial_at(c2, x), "d_cap_l")
    report.meta["x"] = [x.re, x.im] if not x.at_infinity else "inf"
    return report


def terminal_driving(c: Curve, direction: Literal["forward", "backward"] = "forward") -> DrivingFunction:
    """Chordal driving toward 1 (forward) or, for the reversed curve, toward -1."""
    if direction == "forward":
        return unzip_chordal_chain(c, ONE).driving()
    return unzip_chordal_chain(reverse(c), MINUS_ONE).driving()


def locally_uniform_distance(
    W1: DrivingFunction,
    W2: DrivingFunction,
    tau: float | None = None,
    n_max: int | None = None,
) -> float:
    tau = Config.DF_TAU if tau is None else tau
    n_max = Config.DF_N if n_max is None else n_max
    horizon = min(W1.T, W2.T)
    grid = np.union1d(W1.times, W2.times)
    n_units = min(n_max, int(np.floor(horizon / tau)))
    if n_units == 0:
        logger.warning("capacity horizon %.3g shorter than one unit %.3g; using the shared range", horizon, tau)
        g = np.append(grid[grid < horizon], horizon)
        return float(min(1.0, np.max(np.abs(W1(g) - W2(g)))))
    total = 0.0
    for n in range(1, n_units + 1):
        g = np.append(grid[grid < n * tau], n * tau)
        total += 2.0 ** -n * min(1.0, float(np.max(np.abs(W1(g) - W2(g)))))
    return total


def d_locally_uniform(
    c1: Curve,
    c2: Curve,
    direction: Literal["forward", "backward"] = "forward",
    tau: float | None = None,
    n_max: int | None = None,
) -> float:
    """Σ_n 2^-n min(1, sup over [0, nτ] of the driving difference toward the far endpoint."""
    return locally_uniform_distance(
        terminal_driving(c1, direction), terminal_driving(c2, direction), tau, n_max
    )
