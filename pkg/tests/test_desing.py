"""Star-subdivision desingularization of G-stable cones and fans."""

import pytest

from toricnash.cones import Cone
from toricnash.config import Limits
from toricnash.desing import (
    DesingularizationError,
    g_desingularize,
    is_moderate_resolution,
)
from toricnash.errors import ResourceCapExceeded
from toricnash.fans import fan_from_cone, fan_hilbert_union, is_refinement
from toricnash.gstable import is_g_stable_fan


def resolve_cone(cone):
    fan = fan_from_cone(cone)
    final, trace = g_desingularize(fan)
    return fan, final, trace


def test_surface_family_step_counts_and_shape():
    for n in range(1, 6):
        cone = Cone([(1, 0), (1, n)])
        fan, final, trace = resolve_cone(cone)
        assert len(trace.steps) == max(0, n - 1)
        assert all(c.is_regular for c in final.maximal_cones)
        assert is_refinement(final, fan)
        assert final.rays == tuple((1, k) for k in range(n + 1))
        assert final.rays == fan_hilbert_union(fan)


def test_regular_input_needs_no_steps():
    fan, final, trace = resolve_cone(Cone([(1, 0), (0, 1)]))
    assert trace.steps == ()
    assert final == fan


def test_measures_decrease_lexicographically_along_the_trace():
    _, _, trace = resolve_cone(Cone([(1, 0), (1, 5)]))
    assert trace.steps
    for step in trace.steps:
        assert tuple(step.measures_after) < tuple(step.measures_before)
        assert step.gamma not in step.cone_rays


def test_three_dimensional_g_stable_cone():
    cone = Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)])
    fan, final, trace = resolve_cone(cone)
    assert all(c.is_regular for c in final.maximal_cones)
    assert is_refinement(final, fan)
    assert set(final.rays) == set(fan_hilbert_union(fan))
    assert [s.gamma for s in trace.steps] == [(1, 1, 1)]
    assert is_g_stable_fan(final).is_g_stable  # regular fans trivially qualify


def test_step_absorbs_a_non_regular_join_face():
    # Splitting the last bad 2-face of this cone also splits the 3-cone above
    # it, and the join of the new ray with an outer ray is itself non-regular.
    # The step keeps subdividing until (M, N) genuinely drops.
    cone = Cone([(0, 0, 1), (0, 3, -2), (3, 0, -2)])
    fan, final, trace = resolve_cone(cone)
    assert all(c.is_regular for c in final.all_cones())
    assert is_refinement(final, fan)
    assert final.rays == fan_hilbert_union(fan)
    assert [s.extra_gammas for s in trace.steps].count(()) == len(trace.steps) - 1
    last = trace.steps[-1]
    assert last.gamma == (2, 1, -2)
    assert last.extra_gammas == ((1, 1, -1),)
    assert last.measures_before == (1, 1) and last.measures_after == (0, 0)
    for step in trace.steps:
        assert tuple(step.measures_after) < tuple(step.measures_before)


def test_two_dimensional_steps_are_single_subdivisions():
    # With no cones above them, split 2-cones never mint new bad joins.
    for n in range(2, 7):
        _, _, trace = resolve_cone(Cone([(1, 0), (1, n)]))
        assert all(s.extra_gammas == () for s in trace.steps)


def test_moderate_for_cone_inputs():
    for cone in [
        Cone([(1, 0), (1, 4)]),
        Cone([(1, 0), (2, 5)]),
        Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)]),
    ]:
        _, final, _ = resolve_cone(cone)
        assert is_moderate_resolution(final, cone)


def test_multi_cone_fan_input():
    from toricnash.fans import Fan

    fan = Fan([Cone([(1, 0), (1, 2)]), Cone([(1, 2), (0, 1)])], 2)
    final, trace = g_desingularize(fan)
    assert all(c.is_regular for c in final.maximal_cones)
    assert is_refinement(final, fan)
    assert set(final.rays) == set(fan_hilbert_union(fan))


def test_rejects_non_g_stable_input():
    bad = fan_from_cone(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)]))
    with pytest.raises(DesingularizationError) as err:
        g_desingularize(bad)
    assert err.value.reason == "input-not-g-stable"


def test_gstable_check_can_be_skipped():
    bad = fan_from_cone(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)]))
    # without the precondition the loop still runs; on this cone it happens to
    # produce a regular refinement even though the G-stable theory is void
    final, _ = g_desingularize(bad, check_g_stable=False)
    assert all(c.is_regular for c in final.maximal_cones)


def test_step_cap_raises_resource_error():
    fan = fan_from_cone(Cone([(1, 0), (1, 6)]))
    with pytest.raises(ResourceCapExceeded):
        g_desingularize(fan, limits=Limits(desing_steps=1))


def test_trace_endpoints_are_the_returned_fans():
    fan, final, trace = resolve_cone(Cone([(1, 0), (1, 3)]))
    assert trace.initial == fan
    assert trace.final == final
