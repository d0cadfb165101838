from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from curves.curve import Curve, CurveError, concat, densify, is_simple, polyline, resample, reverse
from curves.distances import hausdorff_distance, uniform_distance
from curves.io import read_curve_csv, write_curve_csv
from geometry.points import INF


def test_params_must_increase_from_zero_to_one():
    with pytest.raises(CurveError):
        Curve(np.array([0, 1j, 2j]), np.array([0.0, 0.7, 0.5]))
    with pytest.raises(CurveError):
        Curve(np.array([0, 1j]), np.array([0.1, 1.0]))


def test_repeated_samples_collapse():
    c = Curve(np.array([0, 1j, 1j, 2j]), None)
    assert len(c) == 3
    assert c.params[-1] == 1.0


def test_half_plane_curve_rejects_lower_samples():
    with pytest.raises(CurveError):
        Curve.from_points([0, -1j])


def test_disc_curve_rejects_outside_samples():
    with pytest.raises(CurveError):
        Curve.from_points([0, 2.0], domain="disc")


def test_reverse_is_an_involution(bump):
    back = reverse(reverse(bump))
    assert_allclose(back.points, bump.points)
    assert_allclose(back.params, bump.params)
    assert reverse(bump).start == bump.end


def test_concat_checks_endpoints():
    a = Curve.from_points([0, 1j])
    b = Curve.from_points([1j, 1 + 1j])
    joined = concat(a, b)
    assert len(joined) == 3
    assert_allclose(joined.params, [0.0, 0.5, 1.0])
    with pytest.raises(CurveError):
        concat(a, Curve.from_points([2j, 3j]))


def test_reverse_of_concat_swaps_the_pieces():
    a = Curve(np.array([-1.0, -0.5 + 0.5j, 1j]), np.array([0.0, 0.25, 1.0]))
    b = Curve(np.array([1j, 0.5 + 0.25j, 1.0]), np.array([0.0, 0.75, 1.0]))
    left = reverse(concat(a, b))
    right = concat(reverse(b), reverse(a))
    assert_array_equal(left.points, right.points)
    assert_array_equal(left.params, right.params)


def test_densify_bounds_gap():
    c = densify(Curve.from_points([0, 1j, 1 + 1j]), 0.05)
    assert np.max(np.abs(np.diff(c.points))) <= 0.05 + 1e-12


def test_resample_equal_spacing():
    c = resample(Curve.from_points([0, 1j, 1 + 1j]), 21)
    steps = np.abs(np.diff(c.points))
    assert_allclose(steps, 0.1, atol=1e-12)


def test_is_simple_detects_crossing():
    assert is_simple(polyline([0, 1j, 1 + 1j], 10))
    assert not is_simple(Curve.from_points([0, 2j, 1 + 1j, -1 + 1j]))


def test_hausdorff_symmetric_and_zero_on_self(semicircle, bump):
    assert hausdorff_distance(semicircle, semicircle) == 0.0
    assert hausdorff_distance(semicircle, bump) == pytest.approx(hausdorff_distance(bump, semicircle))


def test_uniform_distance_dominates_hausdorff(semicircle, bump):
    assert uniform_distance(semicircle, bump) >= hausdorff_distance(semicircle, bump) - 1e-12


def test_uniform_distance_ignores_reparametrisation(bump):
    assert uniform_distance(bump, densify(bump, 0.002)) < 0.01


def test_uniform_distance_sees_orientation():
    seg = Curve.from_points([-1, 1])
    assert uniform_distance(seg, reverse(seg)) == pytest.approx(2.0)


def test_csv_round_trip_keeps_infinity(tmp_path):
    c = Curve(np.array([0, 1j, INF]), np.array([0.0, 0.5, 1.0]))
    back = read_curve_csv(write_curve_csv(c, tmp_path / "c.csv"))
    assert np.isinf(back.points[-1].real)
    assert_allclose(back.points[:2], c.points[:2])
    assert_allclose(back.params, c.params)


def test_malformed_csv_names_line(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("t,re,im\n0,0,0\nx,1,1\n")
    with pytest.raises(CurveError, match="3"):
        read_curve_csv(p)
