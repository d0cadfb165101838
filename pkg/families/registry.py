"""Dispatch from a :class:`FamilySpec` to its approximant and limit curves."""

import logging

from curves.curve import Curve
from families import generators as gen
from families.spec import FamilyError, FamilySpec
from families.transport import transport_to_canonical
from geometry.points import MINUS_ONE, ONE

logger = logging.getLogger(__name__)

# dyadic loops hang off this vertical segment, clear of the real line
DYADIC_BASE = (0j, 3j)


def generate(spec: FamilySpec) -> Curve:
    """Approximant number ``spec.j`` in its natural domain.

    For dyadic loops the index is the loop depth.
    """
    spu = spec.samples_per_unit
    f = spec.family
    if f == "ladder":
        return gen.gen_ladder(spec.j, height=spec.height, samples_per_unit=spu)
    if f == "three_segment":
        return gen.gen_three_segment(spec.j, spec.variant, spu)
    if f == "dyadic_loops":
        return gen.gen_dyadic_loops(spec.j, base=DYADIC_BASE, loop_scale=spec.loop_scale, samples_per_unit=spu)
    if f == "hooks":
        return gen.gen_hooks(spec.j, spec.depth, spu)
    if f == "figure_eight":
        return gen.gen_figure_eight(spec.j, spec.variant, samples_per_unit=spu)
    if f == "half_strip":
        return gen.gen_half_strip(spec.j, spu)
    if f == "perturbed_semicircle":
        return gen.gen_perturbed_semicircle(spec.j, samples_per_unit=spu)
    raise FamilyError(f"unknown family {f!r}")


def generate_canonical(spec: FamilySpec) -> Curve:
    """Approximant moved to the half-plane from -1 to 1.

    Ladders and dyadic loops stay in their own frame: they start on the
    real line but do not end on it.
    """
    c = generate(spec)
    if spec.family == "three_segment":
        return transport_to_canonical(c, "disc", MINUS_ONE, ONE)
    if spec.family == "half_strip":
        return transport_to_canonical(c, "half_strip", c.start, c.end)
    return c


def family_target(spec: FamilySpec, j_ref: int | None = None) -> Curve:
    """Limit curve of the family, or its proxy at index ``j_ref``, in the frame of ``generate_canonical``."""
    spu = spec.samples_per_unit
    f = spec.family
    j_ref = spec.j + 4 if j_ref is None else j_ref
    if f == "ladder":
        if spec.height is None:
            raise FamilyError("the ladder limit needs a truncation height")
        return gen.ladder_target(spec.j, spec.height, spu)
    if f == "three_segment":
        fine = gen.gen_three_segment(j_ref, "plain", spu)
        return transport_to_canonical(fine, "disc", MINUS_ONE, ONE)
    if f == "hooks":
        return gen.hooks_limit(spec.depth, spu)
    if f == "perturbed_semicircle":
        return gen.gen_perturbed_semicircle(j_ref, amplitude=0.0, samples_per_unit=spu)
    if f == "figure_eight":
        forward, _ = gen.figure_eight_limits(j_ref, spu)
        return forward
    if f == "dyadic_loops":
        return gen.gen_dyadic_loops(min(j_ref, 12), base=DYADIC_BASE, loop_scale=spec.loop_scale, samples_per_unit=spu)
    raise FamilyError(f"family {f!r} has no limit curve")
