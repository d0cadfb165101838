from __future__ import annotations

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pydantic import ValidationError

from curves.curve import is_simple
from families.generators import (
    dyadic_positions,
    figure_eight_limits,
    gen_dyadic_loops,
    gen_figure_eight,
    gen_half_strip,
    gen_hooks,
    gen_ladder,
    gen_perturbed_semicircle,
    gen_three_segment,
    hooks_limit,
    ladder_target,
)
from families.registry import family_target, generate, generate_canonical
from families.spec import FamilyError, FamilySpec
from families.transport import canonical_map, transport_to_canonical
from geometry.points import MINUS_ONE, ONE
from loewner.unzip import unzip_radial_chain


def test_spec_checks_variant_per_family():
    FamilySpec(family="three_segment", variant="doubled")
    with pytest.raises(ValidationError):
        FamilySpec(family="figure_eight", variant="plain")
    with pytest.raises(ValidationError):
        FamilySpec(family="hooks", depth=13)
    with pytest.raises(ValidationError):
        FamilySpec(family="hooks", j=0)


def test_ladder_vertices_and_scaling():
    c = gen_ladder(1, n_max=3)
    assert_allclose(c.points, 0.5 * np.array([0, -1 + 1j, 0.5j, 1 + 2j, 1j, -1 + 3j]))
    assert is_simple(c)


def test_ladder_height_truncation_matches_target():
    c = gen_ladder(3, height=1.0, samples_per_unit=32)
    target = ladder_target(3, 1.0, 32)
    assert c.points[-1].imag == pytest.approx(target.points[-1].imag)
    assert_allclose(target.points.real, 0.0)


def test_half_strip_stays_in_strip():
    c = gen_half_strip(4)
    assert np.all(np.abs(c.points.real) <= 1.0)
    assert c.points[2] == pytest.approx(0.5j)


def test_perturbed_semicircle_endpoints_and_limit():
    c = gen_perturbed_semicircle(2)
    assert c.points[0] == -1 and c.points[-1] == 1
    flat = gen_perturbed_semicircle(2, amplitude=0.0)
    assert_allclose(np.abs(flat.points), 1.0)
    assert np.max(np.abs(np.abs(c.points) - 1.0)) == pytest.approx(0.5 * 0.25, rel=1e-2)


@pytest.mark.parametrize("variant", ["plain", "doubled"])
def test_three_segment_is_a_simple_disc_curve(variant):
    c = gen_three_segment(3, variant, 32)
    assert c.domain == "disc"
    assert c.points[0] == -1 and c.points[-1] == 1
    assert is_simple(c)


def test_three_segment_interweave_alternates():
    assert_array_equal(gen_three_segment(3, "interweave").points, gen_three_segment(3, "plain").points)
    assert_array_equal(gen_three_segment(4, "interweave").points, gen_three_segment(4, "doubled").points)


def test_dyadic_positions_count():
    pos = dyadic_positions(3)
    assert len(pos) == 7
    assert (1, 0.5) in pos and (3, 0.875) in pos


def test_dyadic_loops_visit_every_level():
    c = gen_dyadic_loops(3, samples_per_unit=64)
    assert c.points[0] == 0 and c.points[-1] == 1
    # the level-1 loop is the only one reaching this high
    assert np.max(c.points.imag) == pytest.approx(2 * 0.5 / 4, rel=1e-2)
    assert np.all(c.points.imag >= -1e-12)


def test_dyadic_loops_reject_oversized_scale():
    with pytest.raises(FamilyError):
        gen_dyadic_loops(2, loop_scale=1.5)
    with pytest.raises(FamilyError):
        gen_dyadic_loops(0)


@pytest.mark.parametrize("j", [1, 2, 3])
def test_hooks_approximants_run_from_minus_one_to_one(j):
    c = gen_hooks(j, samples_per_unit=32)
    assert c.points[0] == -1 and c.points[-1] == 1
    assert np.max(np.abs(c.points.real[c.points.imag > 0.5])) < 1.0


def test_hooks_limit_retraces_the_channel():
    c = hooks_limit(2, samples_per_unit=32)
    assert c.points[0] == -1 and c.points[-1] == 1
    assert np.max(c.points.imag) == pytest.approx(3.0, abs=0.3)


@pytest.mark.parametrize("variant", ["a", "b"])
def test_figure_eight_variants_are_simple(variant):
    c = gen_figure_eight(2, variant, samples_per_unit=32)
    assert c.points[0] == -1 and c.points[-1] == 1
    assert is_simple(c)


def test_figure_eight_limits_differ():
    forward, backward = figure_eight_limits(3, 32)
    assert len(forward) != len(backward) or not np.allclose(forward.points, backward.points)


def test_generators_are_deterministic():
    spec = FamilySpec(family="hooks", j=2, samples_per_unit=16)
    assert_array_equal(generate(spec).points, generate(spec).points)


def test_three_segment_transport_lands_on_canonical_frame():
    c = generate_canonical(FamilySpec(family="three_segment", j=2, samples_per_unit=32))
    assert c.domain == "half_plane"
    assert c.points[0] == pytest.approx(-1.0)
    assert c.points[-1] == pytest.approx(1.0)
    assert np.all(c.points[np.isfinite(c.points)].imag >= 0.0)


def test_half_strip_transport():
    c = gen_half_strip(3, 16)
    moved = transport_to_canonical(c, "half_strip", c.start, c.end)
    assert moved.points[0] == pytest.approx(-1.0)
    assert moved.points[-1] == pytest.approx(1.0)


def test_transport_rejects_interior_endpoints():
    c = gen_three_segment(2)
    with pytest.raises(FamilyError):
        transport_to_canonical(c, "disc", 0.5, ONE)
    assert transport_to_canonical(c, "disc", MINUS_ONE, ONE).domain == "half_plane"


def test_family_targets():
    ladder = FamilySpec(family="ladder", j=2, height=1.0, samples_per_unit=16)
    assert_allclose(family_target(ladder).points.real, 0.0)
    with pytest.raises(FamilyError):
        family_target(FamilySpec(family="ladder", j=2))
    with pytest.raises(FamilyError):
        family_target(FamilySpec(family="half_strip", j=2))
    semi = family_target(FamilySpec(family="perturbed_semicircle", j=1, samples_per_unit=16))
    assert_allclose(np.abs(semi.points), 1.0)


@pytest.mark.parametrize("j", [2, 3, 4])
def test_ladder_defaults_to_4j_rungs(j):
    s = 2.0 ** -j
    c = gen_ladder(j)
    assert len(c) == 2 * 4 * j
    assert c.points[-1] == pytest.approx(s * (1 + 4j * j))
    assert np.max(np.abs(c.points.real)) == pytest.approx(s)
    target = ladder_target(j)
    assert target.points[-1] == pytest.approx(1j * c.points[-1].imag)


def test_registry_dyadic_loops_hang_off_the_vertical_base():
    spec = FamilySpec(family="dyadic_loops", j=2, samples_per_unit=32)
    c = generate(spec)
    assert c.points[0] == 0 and c.points[-1] == pytest.approx(3j)
    assert np.all(c.points.imag >= 0.0)
    assert len(family_target(spec)) > len(c)


def test_three_segment_doubled_crosses_near_i_three_times():
    j = 3
    c = gen_three_segment(j, "doubled")
    top = np.flatnonzero(c.points.imag > 0.5)
    assert np.all(np.abs(c.points[[1, 4, 5]] - 1j) <= 2.0 ** (1 - j))
    assert np.all(np.abs(c.points[[2, 3, 6, 7]] + 1j) <= 2.0 ** (1 - j))
    assert np.all(np.abs(c.points[1:-1]) < 1.0)
    assert len(top) == 3


def test_half_strip_viewpoint_is_cut_off_at_the_right_wall():
    spec = FamilySpec(family="half_strip", j=3, samples_per_unit=16)
    strip = generate(spec)
    canon = generate_canonical(spec)
    assert len(canon) == len(strip)
    x0 = 0.5 + 0.25j
    x = canonical_map("half_strip", strip.start, strip.end)(np.sin(np.pi * x0 / 2.0))
    ch = unzip_radial_chain(canon, x)
    # the left wall touch at -1+i leaves x outside; the right one at 1+2i encloses it
    assert ch.meta["swallow_step"] == int(np.argmin(np.abs(strip.points - (1 + 2j))))
    assert ch.meta["contact_steps"] >= 1
