"""Normalized Nash blowup pipeline, cross-checked against a sympy route.

The independent oracle recomputes the log-Jacobian points directly:
enumerate d-subsets of the dual Hilbert basis with itertools and take
determinants with sympy.Matrix, bypassing the kernel's integer solver.
"""

from itertools import combinations

import pytest
from sympy import Matrix

from toricnash.cones import Cone
from toricnash.config import Limits
from toricnash.errors import ResourceCapExceeded
from toricnash.hilbert import hilbert_elements
from toricnash.nash import (
    compare_characteristics,
    log_jacobian_points,
    nash_blowup_fan,
    nash_iterate,
    newton_polyhedron,
    relevant_primes,
)

SINGULAR_3FOLD = Cone([(0, 0, 1), (0, 3, -2), (3, 0, -2)])


def sympy_log_jacobian(sigma, p=0):
    basis = sorted(hilbert_elements(sigma.dual()))
    points = set()
    for subset in combinations(basis, sigma.dim):
        d = int(Matrix(subset).det())
        if d != 0 and (p == 0 or d % p != 0):
            points.add(tuple(map(sum, zip(*subset))))
    return tuple(sorted(points))


# ---------------------------------------------------------------------------
# log-Jacobian points

def test_log_jacobian_matches_sympy_route():
    cones = [
        Cone([(1, 0), (1, 2)]),
        Cone([(1, 0), (1, 5)]),
        SINGULAR_3FOLD,
        Cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]),
    ]
    for sigma in cones:
        for p in (0, 2, 3, 5):
            assert log_jacobian_points(sigma, p).points == sympy_log_jacobian(sigma, p)


def test_log_jacobian_pinned_for_singular_3fold():
    j0 = log_jacobian_points(SINGULAR_3FOLD, 0)
    assert j0.points == ((2, 2, 1), (3, 3, 3), (3, 4, 4), (4, 3, 4))
    dets = sorted(abs(d) for _, d in j0.witnesses.values())
    assert dets == [1, 1, 1, 3]
    j3 = log_jacobian_points(SINGULAR_3FOLD, 3)
    assert j3.points == ((2, 2, 1), (3, 4, 4), (4, 3, 4))


def test_positive_characteristic_points_are_a_subset():
    for sigma in [SINGULAR_3FOLD, Cone([(1, 0), (1, 4)])]:
        j0 = set(log_jacobian_points(sigma, 0).points)
        for p in (2, 3, 5, 7):
            assert set(log_jacobian_points(sigma, p).points) <= j0


def test_witnesses_certify_their_points():
    j0 = log_jacobian_points(SINGULAR_3FOLD, 0)
    for point, (subset, d) in j0.witnesses.items():
        assert tuple(map(sum, zip(*subset))) == point
        assert int(Matrix(subset).det()) == d
        assert d != 0


def test_characteristic_must_be_zero_or_prime():
    with pytest.raises(ValueError):
        log_jacobian_points(Cone([(1, 0), (0, 1)]), 4)


def test_input_must_be_fulldim_pointed():
    with pytest.raises(ValueError):
        log_jacobian_points(Cone([(1, 0)], 2))
    with pytest.raises(ValueError):
        log_jacobian_points(Cone([(1, 0), (-1, 0), (0, 1)]))


def test_subset_cap():
    with pytest.raises(ResourceCapExceeded):
        log_jacobian_points(SINGULAR_3FOLD, 0, Limits(log_jacobian_tuples=2))


# ---------------------------------------------------------------------------
# relevant primes

def test_relevant_primes_pinned():
    assert relevant_primes(SINGULAR_3FOLD) == (3,)
    assert relevant_primes(Cone([(1, 0), (1, 2)])) == (2,)
    assert relevant_primes(Cone([(1, 0), (0, 1)])) == ()


def test_relevant_primes_cover_all_witness_determinants():
    primes = set(relevant_primes(SINGULAR_3FOLD))
    basis = sorted(hilbert_elements(SINGULAR_3FOLD.dual()))
    for subset in combinations(basis, 3):
        d = abs(int(Matrix(subset).det()))
        if d > 1:
            assert any(d % p == 0 for p in primes)


# ---------------------------------------------------------------------------
# Newton polyhedra and blowup fans

def test_newton_polyhedron_of_singular_3fold():
    n0 = newton_polyhedron(SINGULAR_3FOLD, 0)
    verts = sorted(tuple(int(x) for x in v) for v in n0.vertices)
    assert verts == [(2, 2, 1), (3, 4, 4), (4, 3, 4)]
    assert (3, 3, 3) not in set(verts)
    assert n0.contains((3, 3, 3))
    assert n0.recession == SINGULAR_3FOLD.dual()


def test_newton_polyhedron_agrees_across_characteristics_here():
    n0 = newton_polyhedron(SINGULAR_3FOLD, 0)
    n3 = newton_polyhedron(SINGULAR_3FOLD, 3)
    assert sorted(n0.vertices) == sorted(n3.vertices)


def test_blowup_of_regular_cone_is_smooth_and_trivial():
    sigma = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    res = nash_blowup_fan(sigma)
    assert res.smooth
    assert res.singular_charts == ()
    assert res.fan.maximal_cones == (sigma,)


def test_blowup_fan_supports_sigma_and_refines_it():
    res = nash_blowup_fan(SINGULAR_3FOLD)
    from toricnash.fans import fan_from_cone, is_refinement

    assert is_refinement(res.fan, fan_from_cone(SINGULAR_3FOLD))
    assert not res.smooth
    assert len(res.singular_charts) == 3
    chart_at_corner = dict(res.singular_charts)[(2, 2, 1)]
    assert chart_at_corner.rays == ((0, 0, 1), (0, 3, -1), (1, 1, -1), (3, 0, -1))
    assert chart_at_corner.dual().rays == ((0, 1, 0), (1, 0, 0), (1, 2, 3), (2, 1, 3))


def test_surface_blowup_contracts_the_singularity_ladder():
    # one normalized Nash blowup of the n = 3 surface point leaves n = 1 charts
    tree = nash_iterate(Cone([(1, 0), (1, 3)]), 0, max_depth=6)
    assert tree.resolved
    assert tree.depth == 2


def test_singular_3fold_resolves_in_three_rounds():
    tree = nash_iterate(SINGULAR_3FOLD, 0, max_depth=5)
    assert tree.resolved
    assert not tree.cap_hit
    assert tree.depth == 3


def test_iteration_cap_is_reported_not_raised():
    tree = nash_iterate(SINGULAR_3FOLD, 0, max_depth=1)
    assert tree.cap_hit
    assert not tree.resolved


def test_compare_characteristics():
    cmp = compare_characteristics(SINGULAR_3FOLD)
    assert cmp.relevant_primes == (3,)
    assert cmp.equal_for_all
    assert cmp.disagreements == ()
    trivial = compare_characteristics(Cone([(1, 0), (0, 1)]))
    assert trivial.relevant_primes == ()
    assert trivial.equal_for_all
