from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from geometry.mobius import (
    MobiusTransform,
    cayley,
    cayley_array,
    cayley_inv_array,
    cdist,
    chordal_transport,
    hyperbolic_fixing_pm1,
    mobius_from_points,
    psi_boundary,
    psi_interior,
    radial_transport,
    viewpoint_transport,
)
from geometry.points import INF, INFINITY, ComplexPoint, GeometryError, as_point, is_inf


def test_point_rejects_nonfinite_coordinates():
    with pytest.raises(GeometryError):
        ComplexPoint(np.inf, 0.0)
    assert ComplexPoint.from_complex(complex(np.inf, 1.0)).at_infinity


def test_boundary_and_interior_predicates():
    assert ComplexPoint(0.3, 0.0).is_boundary()
    assert INFINITY.is_boundary()
    assert ComplexPoint(0.3, 0.2).is_interior()
    assert not INFINITY.is_interior()


def test_make_normalises_determinant():
    m = MobiusTransform.make(2, 3, 1, 4)
    assert_allclose(np.linalg.det(m.matrix), 1.0)


def test_degenerate_map_raises():
    with pytest.raises(GeometryError):
        MobiusTransform.make(1, 2, 2, 4)


def test_pole_and_infinity_handling():
    m = MobiusTransform.make(1, 0, 1, -1)   # z / (z - 1)
    out = m.apply(np.array([1.0, INF, 2.0]))
    assert is_inf(out[0])
    assert_allclose(out[1], 1.0)
    assert_allclose(out[2], 2.0)


def test_compose_and_inverse():
    m = MobiusTransform.make(1, 2j, -1j, 3)
    z = np.array([0.2 + 0.7j, -3.0 + 0.1j])
    assert_allclose(m.inverse().apply(m.apply(z)), z, atol=1e-12)
    assert m.compose(m.inverse()).close_to(MobiusTransform.identity())


def test_from_points_hits_targets():
    src = [0.0, 1.0, INFINITY]
    dst = [1j, -1.0, 2.0 + 1j]
    m = mobius_from_points(src, dst)
    for s, d in zip(src, dst):
        got = m(s)
        assert_allclose(got.to_complex(), as_point(d).to_complex(), atol=1e-12)


def test_cayley_landmarks():
    assert_allclose(cayley(ComplexPoint(0.0, 1.0)).to_complex(), 0.0, atol=1e-15)
    assert_allclose(cayley(INFINITY).to_complex(), 1.0)
    assert_allclose(cayley(ComplexPoint(1.0, 0.0)).to_complex(), -1j)
    assert_allclose(cayley(ComplexPoint(-1.0, 0.0)).to_complex(), 1j)


def test_cayley_round_trip_on_half_plane():
    z = np.array([0.1 + 0.2j, -4.0 + 3.0j, 2.5 + 0.0j])
    assert_allclose(cayley_inv_array(cayley_array(z)), z, atol=1e-12)


def test_cdist_is_bounded_by_two():
    assert cdist(ComplexPoint(-1.0, 0.0), ComplexPoint(1.0, 0.0)) == pytest.approx(2.0)
    assert cdist(ComplexPoint(1e6, 1.0), INFINITY) < 1e-5


def test_psi_interior_sends_x_to_i():
    x = ComplexPoint(0.4, 2.5)
    assert_allclose(psi_interior(x)(x).to_complex(), 1j)
    with pytest.raises(GeometryError):
        psi_interior(ComplexPoint(0.4, 0.0))


@pytest.mark.parametrize("r", [0.3, -0.7, 1.0, -1.0, 2.5])
def test_chordal_transport_preserves_half_plane(r):
    m = chordal_transport(ComplexPoint(r, 0.0))
    assert m(ComplexPoint(r, 0.0)).at_infinity
    assert m.apply(np.array([0.1 + 1.0j]))[0].imag > 0


def test_psi_boundary_fixes_plus_minus_one():
    m = psi_boundary(ComplexPoint(2.0, 0.0))
    assert_allclose(m.apply(np.array([1.0, -1.0])), [1.0, -1.0], atol=1e-12)


def test_radial_transport_centres_viewpoint():
    x = ComplexPoint(-0.5, 0.8)
    assert_allclose(radial_transport(x)(x).to_complex(), 0.0, atol=1e-14)
    assert viewpoint_transport(x).close_to(radial_transport(x))
    assert viewpoint_transport(ComplexPoint(0.5, 0.0)).close_to(chordal_transport(ComplexPoint(0.5, 0.0)))


def test_hyperbolic_map_fixes_endpoints():
    m = hyperbolic_fixing_pm1(0.7)
    assert_allclose(m.apply(np.array([1.0, -1.0])), [1.0, -1.0], atol=1e-12)
    assert m.apply(np.array([1j]))[0].imag > 0
