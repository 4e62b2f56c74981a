"""G-stability: pinned verdicts, the supporting form, and the closure
properties (sub-cones, faces, Hilbert-ray refinements) that the
desingularization algorithm leans on.
"""

import random
from itertools import combinations

import pytest

from toricnash.cones import Cone
from toricnash.fans import fan_from_cone, fan_hilbert_union, star_subdivision
from toricnash.gstable import (
    check_condition_i,
    check_condition_ii,
    gamma_plus,
    is_g_stable,
    is_g_stable_fan,
    supporting_form,
)
from toricnash.hilbert import hilbert_elements
from toricnash.intlinalg import dot

from test_cones import random_pointed_cone

# full-dimensional pointed cones pinned G-stable elsewhere in the suite
STABLE_CONES = [
    Cone([(1, 0), (1, 1)]),
    Cone([(1, 0), (1, 4)]),
    Cone([(1, 0), (2, 5)]),
    Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)]),
]


# ---------------------------------------------------------------------------
# pinned verdicts

def test_surface_family_is_g_stable():
    for n in range(1, 6):
        rep = is_g_stable(Cone([(1, 0), (1, n)]))
        assert rep.is_g_stable


def test_condition_i_failure_witness():
    c = Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)])
    rep = is_g_stable(c)
    assert not rep.is_g_stable
    assert not rep.condition_i.holds
    assert rep.condition_i.basis_not_on_gamma == ((1, 1, 1),)


def test_condition_ii_failure_witness():
    c = Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2), (0, 0, -1)])
    rep = is_g_stable(c)
    assert rep.condition_i.holds
    assert not rep.condition_ii.holds
    assert rep.condition_ii.witness_subset == ((0, 1, 0), (1, 0, 0), (1, 1, 2))
    assert rep.condition_ii.witness_element == (1, 1, 1)


def test_index_three_dual_cone_is_g_stable():
    rep = is_g_stable(Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)]))
    assert rep.is_g_stable


def test_blown_up_chart_dual_fails_condition_i():
    c = Cone([(1, 0, 0), (0, 1, 0), (1, 2, 3), (2, 1, 3)])
    assert hilbert_elements(c) == (
        (0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 1, 3),
    )
    rep = check_condition_i(c)
    assert not rep.holds
    assert (1, 1, 1) in rep.basis_not_on_gamma


# ---------------------------------------------------------------------------
# Γ₊ and the supporting form

def test_gamma_plus_vertices_are_basis_elements():
    c = Cone([(1, 0), (1, 4)])
    data = gamma_plus(c)
    vs = {tuple(int(x) for x in v) for v in data.polyhedron.vertices}
    assert vs <= set(hilbert_elements(c))
    assert data.polyhedron.recession == c


def test_gamma_lattice_points_of_surface_cone():
    data = gamma_plus(Cone([(1, 0), (1, 3)]))
    assert data.lattice_points == ((1, 0), (1, 1), (1, 2), (1, 3))


def test_supporting_form_touches_rays_and_caps_basis():
    for c in STABLE_CONES:
        form = supporting_form(c)
        assert form.ell0 > 0
        for r in c.rays:
            assert dot(form.gamma0, r) == form.ell0
        for h in hilbert_elements(c):
            assert 0 < dot(form.gamma0, h) <= form.ell0


def test_supporting_form_pinned():
    form = supporting_form(Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)]))
    assert (form.gamma0, form.ell0) == ((1, 1, -1), 1)


# ---------------------------------------------------------------------------
# closure under sub-cones generated by basis elements

def _subset_cones(cone, rng, max_draws=10):
    basis = hilbert_elements(cone)
    seen = set()
    out = []
    sizes = range(1, len(basis) + 1)
    pool = [s for size in sizes for s in combinations(basis, size)]
    rng.shuffle(pool)
    for subset in pool[:max_draws]:
        sub = Cone(subset, cone.dim)
        if sub._key() in seen:
            continue
        seen.add(sub._key())
        out.append((subset, sub))
    return out


def test_subcones_of_g_stable_cones_are_g_stable():
    rng = random.Random(4242)
    for c in STABLE_CONES:
        for _, sub in _subset_cones(c, rng):
            assert is_g_stable(sub).is_g_stable


def test_subcone_gamma_plus_is_the_restriction():
    rng = random.Random(77)
    for c in STABLE_CONES:
        gp = gamma_plus(c)
        for _, sub in _subset_cones(c, rng, max_draws=6):
            if sub.sdim == 0:
                continue
            restricted = gp.polyhedron.intersect_with_cone(sub)
            assert restricted is not None
            assert restricted == gamma_plus(sub).polyhedron


def test_faces_of_g_stable_cones_are_g_stable():
    for c in STABLE_CONES:
        for face in c.faces():
            if face.sdim == 0:
                continue
            assert is_g_stable(face).is_g_stable


# ---------------------------------------------------------------------------
# fans and Hilbert-ray refinements

def test_fan_wrapper_matches_cone_verdicts():
    good = fan_from_cone(Cone([(1, 0), (1, 2)]))
    assert is_g_stable_fan(good).is_g_stable
    bad = fan_from_cone(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)]))
    rep = is_g_stable_fan(bad)
    assert not rep.is_g_stable
    assert rep.failures


def test_star_subdivision_at_basis_element_stays_g_stable():
    for c in STABLE_CONES:
        fan = fan_from_cone(c)
        before = set(fan_hilbert_union(fan))
        for gamma in hilbert_elements(c):
            if gamma in c.rays:
                continue
            sub = star_subdivision(fan, gamma)
            assert is_g_stable_fan(sub).is_g_stable
            # refining along basis rays never changes the basis union
            assert set(fan_hilbert_union(sub)) == before


def test_random_2d_cones_are_g_stable(rng):
    for _ in range(20):
        c = random_pointed_cone(rng, 2, spread=12)
        assert is_g_stable(c).is_g_stable


def test_condition_ii_subset_scan_cap():
    from toricnash.config import Limits
    from toricnash.errors import ResourceCapExceeded

    c = Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)])
    with pytest.raises(ResourceCapExceeded):
        check_condition_ii(c, Limits(subset_scan_basis=2))
