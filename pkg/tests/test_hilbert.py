"""Hilbert bases: pinned small cases plus the brute-force enumeration oracle."""

import random

import pytest

from toricnash.cones import Cone
from toricnash.config import Limits
from toricnash.errors import ResourceCapExceeded
from toricnash.hilbert import hilbert_elements
from toricnash.intlinalg import vadd
from toricnash.oracle import brute_force_hilbert
from toricnash.polytopes import product_of_simplices

from test_cones import random_pointed_cone


# ---------------------------------------------------------------------------
# pinned values

def test_surface_family_bases():
    for n in range(1, 6):
        basis = hilbert_elements(Cone([(1, 0), (1, n)]))
        assert basis == tuple((1, k) for k in range(n + 1))


def test_regular_cone_basis_is_its_rays():
    c = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert hilbert_elements(c) == c.rays


def test_interior_element_of_index_three_cone():
    basis = hilbert_elements(Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)]))
    assert basis == ((0, 1, 0), (1, 0, 0), (1, 1, 1), (2, 2, 3))


def test_tetrahedron_height_cone_has_depth_two_element():
    c = Cone([(1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (1, 1, 1, 1)])
    basis = hilbert_elements(c)
    assert (1, 1, 1, 2) in basis
    assert len(basis) == 5


def test_lower_dimensional_cone():
    c = Cone([(2, 2, 0)], 3)
    assert hilbert_elements(c) == ((1, 1, 0),)


def test_zero_cone():
    assert hilbert_elements(Cone([], 2)) == ()


def test_non_pointed_cone_rejected():
    with pytest.raises(ValueError):
        hilbert_elements(Cone([(1, 0), (-1, 0)]))


def test_parallelepiped_cap_enforced():
    tight = Limits(parallelepiped_points=4)
    with pytest.raises(ResourceCapExceeded):
        hilbert_elements(Cone([(1, 0), (1, 7)]), tight)


# ---------------------------------------------------------------------------
# structural properties

def test_basis_elements_are_irreducible_in_the_semigroup():
    c = Cone([(0, 0, 1), (0, 3, -2), (3, 0, -2)])
    basis = hilbert_elements(c)
    basis_set = set(basis)
    for a in basis:
        for b in basis:
            assert vadd(a, b) not in basis_set


def test_basis_is_sorted_unique_and_inside():
    c = Cone([(2, 1, 0), (1, 3, 1), (0, 1, 4), (1, 1, 1)])
    basis = hilbert_elements(c)
    assert list(basis) == sorted(set(basis))
    assert all(c.contains(g) for g in basis)
    assert set(c.rays) <= set(basis)


def test_product_of_simplices_basis_is_the_generators():
    sp = product_of_simplices(2, 2)
    assert hilbert_elements(sp.cone) == sp.cone.rays


# ---------------------------------------------------------------------------
# oracle agreement

def test_matches_brute_force_on_fixed_cones():
    cones = [
        Cone([(1, 0), (1, 5)]),
        Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)]),
        Cone([(0, 0, 1), (0, 3, -2), (3, 0, -2)]),
        Cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]),
    ]
    for c in cones:
        assert hilbert_elements(c) == brute_force_hilbert(c)


def test_matches_brute_force_on_random_cones():
    rng = random.Random(1105)
    for dim in (2, 3):
        for _ in range(6):
            c = random_pointed_cone(rng, dim, spread=4)
            assert hilbert_elements(c) == brute_force_hilbert(c)


def test_brute_force_bound_is_stable():
    # enlarging the enumeration window must not surface new "irreducible"
    # elements — otherwise the factor-3 default would be too tight
    c = Cone([(0, 0, 1), (0, 3, -2), (3, 0, -2)])
    assert brute_force_hilbert(c, factor=3) == brute_force_hilbert(c, factor=4)
