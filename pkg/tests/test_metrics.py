from __future__ import annotations

import itertools

import numpy as np
import pytest

from curves.curve import Curve, polyline, reverse
from geometry.mobius import hyperbolic_fixing_pm1
from geometry.points import ComplexPoint
from loewner.types import DrivingFunction
from metrics.driving import (
    MetricReport,
    align_branch,
    d_cap_l,
    d_cap_r,
    d_locally_uniform,
    driving_distance,
    locally_uniform_distance,
)

X = ComplexPoint(0.2, 0.5)


def test_report_components_must_add_up():
    with pytest.raises(ValueError):
        MetricReport(metric="d_cap_r", value=1.0, cap_term=0.2, sup_term=0.2)


def test_distance_of_a_curve_to_itself_is_zero(semicircle):
    rep = d_cap_r(semicircle, semicircle, X)
    assert rep.value == 0.0
    assert rep.meta["x"] == [0.2, 0.5]


def test_distance_splits_into_capacity_and_sup_terms(semicircle, bump):
    rep = d_cap_r(semicircle, bump, X)
    assert rep.value > 0
    assert rep.value == pytest.approx(rep.cap_term + rep.sup_term)


def test_d_cap_r_is_symmetric(semicircle, bump):
    assert d_cap_r(semicircle, bump, X).value == pytest.approx(d_cap_r(bump, semicircle, X).value)


def test_d_cap_l_on_reversed_curves(semicircle, bump):
    rep = d_cap_l(reverse(semicircle), reverse(bump), X)
    assert rep.metric == "d_cap_l"
    assert rep.value > 0


def test_driving_distance_constant_shift():
    W = DrivingFunction.from_callable(np.sin, 1.0, 100)
    rep = driving_distance(W, W.shifted(0.3))
    assert rep.sup_term == pytest.approx(0.3)
    assert rep.cap_term == 0.0


def test_driving_distance_rejects_mixed_kinds():
    W = DrivingFunction.from_callable(np.sin, 1.0, 10)
    R = DrivingFunction.from_callable(np.sin, 1.0, 10, kind="radial")
    with pytest.raises(ValueError):
        driving_distance(W, R)


def test_radial_branch_alignment():
    R = DrivingFunction.from_callable(np.cos, 1.0, 10, kind="radial")
    aligned = align_branch(R, R.shifted(4.0 * np.pi))
    assert aligned.w0 == pytest.approx(R.w0)


def test_locally_uniform_distance_is_capped():
    W = DrivingFunction.from_callable(lambda t: 0.0, 2.0, 100)
    far = locally_uniform_distance(W, W.shifted(10.0))
    assert far == pytest.approx(sum(2.0 ** -n for n in range(1, 9)))


def test_locally_uniform_self_distance(semicircle):
    assert d_locally_uniform(semicircle, semicircle) == 0.0
    assert d_locally_uniform(semicircle, semicircle, "backward") == 0.0


def test_metrics_see_perturbation(semicircle, bump):
    assert d_locally_uniform(semicircle, bump) > 0.0


def test_curves_agreeing_until_the_viewpoint_is_enclosed_are_at_distance_zero():
    c1 = polyline([-1, -1 + 1j, 0.5 + 1j, 0.5, 1], 64)
    c2 = polyline([-1, -1 + 1j, 0.5 + 1j, 0.5, 0.75 + 0.5j, 1], 64)
    assert d_cap_r(c1, c2, ComplexPoint(0.0, 0.5)).value == 0.0
    # seen from outside the box the two endings differ
    assert d_cap_r(c1, c2, ComplexPoint(2.0, 1.0)).value > 0.0


def test_d_cap_r_triangle_inequality(semicircle, bump):
    flat = polyline([-1.0, -0.5 + 0.6j, 0.5 + 0.6j, 1.0], 200)
    x = ComplexPoint(0.1, 0.3)
    curves = [semicircle, bump, flat]
    d = [[d_cap_r(a, b, x).value for b in curves] for a in curves]
    for i, j, k in itertools.permutations(range(3)):
        assert d[i][k] <= d[i][j] + d[j][k] + 1e-12


def test_d_cap_r_is_conformally_covariant(semicircle, bump):
    m = hyperbolic_fixing_pm1(-0.3)
    x = ComplexPoint(0.1, 0.4)

    def moved(c: Curve) -> Curve:
        return Curve(m.apply(c.points), c.params)

    here = d_cap_r(semicircle, bump, x).value
    there = d_cap_r(moved(semicircle), moved(bump), m(x)).value
    assert there == pytest.approx(here, abs=1e-6)
