"""Rational polyhedra: V/H duality, faces, lattice points, feasible cones."""

from fractions import Fraction

import pytest

from toricnash.cones import Cone
from toricnash.polyhedra import RationalPolyhedron, convex_hull, minkowski_polyhedron

F = Fraction


def test_square_hull_vertices():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (0, 0)])
    assert sorted(p.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert p.is_bounded
    assert p.recession.sdim == 0


def test_interior_points_are_not_vertices():
    p = convex_hull([(0, 0), (4, 0), (0, 4), (1, 1), (2, 1)])
    assert sorted(p.vertices) == [(0, 0), (0, 4), (4, 0)]


def test_rational_vertex_input():
    p = convex_hull([(F(1, 2), F(1, 2)), (2, 0), (0, 2)])
    assert (F(1, 2), F(1, 2)) in p.vertices


def test_minkowski_polyhedron_vertices_and_recession():
    rec = Cone([(1, 0), (0, 1)])
    p = minkowski_polyhedron([(2, 0), (0, 2), (1, 1)], rec)
    # (1,1) = midpoint of the others, swallowed by convexity
    assert sorted(p.vertices) == [(0, 2), (2, 0)]
    assert p.recession == rec
    assert not p.is_bounded
    assert p.contains((5, 7))
    assert not p.contains((0, 0))


def test_cube_face_counts():
    p = convex_hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    by_dim = {}
    for f in p.faces:
        by_dim.setdefault(f.dim, []).append(f)
    assert len(by_dim[0]) == 8
    assert len(by_dim[1]) == 12
    assert len(by_dim[2]) == 6
    assert len(by_dim[3]) == 1


def test_compact_faces_of_unbounded_polyhedron():
    p = minkowski_polyhedron([(1, 0), (0, 1)], Cone([(1, 0), (0, 1)]))
    compact = p.compact_faces()
    dims = sorted(f.dim for f in compact)
    # two vertices and the bounded edge between them; the two rays are not compact
    assert dims == [0, 0, 1]


def test_lattice_points_against_box_filter():
    p = convex_hull([(0, 0), (3, 0), (0, 2)])
    expected = sorted(
        (x, y)
        for x in range(0, 4)
        for y in range(0, 3)
        if 2 * x + 3 * y <= 6
    )
    assert sorted(p.lattice_points()) == expected


def test_face_lattice_points_on_an_edge():
    p = convex_hull([(0, 0), (4, 0), (0, 4)])
    edge = next(
        f for f in p.faces
        if f.dim == 1 and all(v[1] == 0 for v in p.face_points(f))
    )
    assert p.face_lattice_points(edge) == ((0, 0), (1, 0), (2, 0), (3, 0), (4, 0))


def test_feasible_cone_at_square_corner():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert p.feasible_cone((0, 0)).rays == ((0, 1), (1, 0))
    assert p.feasible_cone((1, 1)).rays == ((-1, 0), (0, -1))
    with pytest.raises(ValueError):
        p.feasible_cone((2, 2))


def test_minimal_face_at():
    p = convex_hull([(0, 0), (2, 0), (0, 2)])
    assert p.minimal_face_at((0, 0)).dim == 0
    assert p.minimal_face_at((1, 0)).dim == 1
    assert p.minimal_face_at((F(1, 2), F(1, 2))).dim == 2


def test_translate():
    p = convex_hull([(0, 0), (1, 0), (0, 1)])
    q = p.translate((5, -1))
    assert sorted(q.vertices) == [(5, -1), (5, 0), (6, -1)]


def test_intersect_with_cone():
    p = minkowski_polyhedron([(1, 1)], Cone([(1, 0), (0, 1)]))
    q = p.intersect_with_cone(Cone([(1, 0)], 2))
    assert q is None  # the quadrant above (1,1) misses the x-axis
    r = p.intersect_with_cone(Cone([(1, 0), (1, 1)]))
    assert r is not None
    assert (1, 1) in r.vertices


def test_equality_is_geometric():
    a = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    b = convex_hull([(1, 1), (0, 0), (0, 1), (1, 0), (F(1, 2), F(1, 2))])
    assert a == b
    assert hash(a) == hash(b)
