"""Rational polyhedra Conv(points) + recession cone, exactly.

A polyhedron in Q^d is handled through its homogenization: the pointed cone
in Q^(d+1) generated by (q*p, q) for each point p (q clearing denominators)
and (r, 0) for each recession ray r. Extreme rays of that cone at positive
height are the vertices, rays at height zero are the recession cone, and the
facet normals give the inequality description — so all V/H conversions ride
on the one double-description primitive in :mod:`cones`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product as iterproduct
from typing import Iterable, Sequence

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone, primitive_rational
from .errors import ResourceCapExceeded
from .intlinalg import Vec, dot, is_zero

QPoint = tuple[Fraction, ...]


@dataclass(frozen=True)
class FaceDescriptor:
    """One face of a polyhedron, by combinatorial data.

    ``tight_inequality_indices`` index into the polyhedron's inequality list;
    ``vertex_indices`` into its vertex list. ``dim`` is the affine dimension.
    A face is compact exactly when no recession ray lies on it.
    """

    tight_inequality_indices: tuple[int, ...]
    dim: int
    is_compact: bool
    vertex_indices: tuple[int, ...]
    recession_ray_indices: tuple[int, ...]


class RationalPolyhedron:
    """Conv(points) + Cone(recession), with exact rational vertices."""

    def __init__(
        self,
        points: Iterable[Sequence],
        recession: Cone | None = None,
        dim: int | None = None,
    ):
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise ValueError("a polyhedron needs at least one point")
        if dim is None:
            dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("points of mixed dimension")
        if recession is None:
            recession = Cone((), dim)
        if recession.dim != dim:
            raise ValueError("recession cone dimension mismatch")
        if not recession.is_pointed:
            raise ValueError("recession cone must be pointed")
        self.dim = dim
        gens = [primitive_rational(p + (1,)) for p in set(pts)]
        gens += [r + (0,) for r in recession.rays]
        self.hom = Cone(gens, dim + 1)

    @classmethod
    def _from_hom(cls, hom: Cone, dim: int) -> "RationalPolyhedron":
        self = object.__new__(cls)
        self.dim = dim
        self.hom = hom
        return self

    # -- V-representation ----------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[QPoint, ...]:
        out = []
        for r in self.hom.rays:
            h = r[-1]
            if h > 0:
                out.append(tuple(Fraction(x, h) for x in r[:-1]))
        return tuple(sorted(out))

    @cached_property
    def recession(self) -> Cone:
        return Cone([r[:-1] for r in self.hom.rays if r[-1] == 0], self.dim)

    @property
    def is_bounded(self) -> bool:
        return all(r[-1] != 0 for r in self.hom.rays)

    @property
    def affine_dim(self) -> int:
        return self.hom.sdim - 1

    def is_fulldim(self) -> bool:
        return self.affine_dim == self.dim

    # -- H-representation ----------------------------------------------------

    @cached_property
    def inequalities(self) -> tuple[tuple[Vec, int], ...]:
        """Pairs (a, c) meaning <a, x> >= c; minimal system within the hull."""
        return tuple((f[:-1], -f[-1]) for f in self.hom.facets)

    @cached_property
    def equations(self) -> tuple[tuple[Vec, int], ...]:
        """Pairs (a, c) meaning <a, x> = c, cutting out the affine hull."""
        return tuple((e[:-1], -e[-1]) for e in self.hom.span_equations)

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        return all(dot(a, x) == c for a, c in self.equations) and all(
            dot(a, x) >= c for a, c in self.inequalities
        )

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalPolyhedron):
            return NotImplemented
        return self.dim == other.dim and self.hom == other.hom

    def __hash__(self):
        return hash((self.dim, self.hom))

    def __repr__(self):
        return (
            f"RationalPolyhedron(dim={self.dim}, vertices={len(self.vertices)}, "
            f"recession_rays={len(self.recession.rays)})"
        )

    # -- faces ---------------------------------------------------------------

    def _descriptor_from_hom_rays(self, ray_set) -> FaceDescriptor:
        verts = []
        recs = []
        rec_rays = self.recession.rays
        for r in ray_set:
            if r[-1] > 0:
                v = tuple(Fraction(x, r[-1]) for x in r[:-1])
                verts.append(self.vertices.index(v))
            else:
                recs.append(rec_rays.index(r[:-1]))
        tight = tuple(
            i
            for i, f in enumerate(self.hom.facets)
            if all(dot(f, r) == 0 for r in ray_set)
        )
        face_cone = Cone(sorted(ray_set), self.dim + 1)
        return FaceDescriptor(
            tight_inequality_indices=tight,
            dim=face_cone.sdim - 1,
            is_compact=not recs,
            vertex_indices=tuple(sorted(verts)),
            recession_ray_indices=tuple(sorted(recs)),
        )

    @cached_property
    def faces(self) -> tuple[FaceDescriptor, ...]:
        """All nonempty faces, the polyhedron itself included."""
        out = []
        for s in self.hom.face_ray_sets:
            if any(r[-1] > 0 for r in s):
                out.append(self._descriptor_from_hom_rays(s))
        return tuple(
            sorted(out, key=lambda f: (f.dim, f.vertex_indices, f.recession_ray_indices))
        )

    def compact_faces(self) -> tuple[FaceDescriptor, ...]:
        return tuple(f for f in self.faces if f.is_compact)

    def minimal_face_at(self, x: Sequence) -> FaceDescriptor:
        """The unique face containing x in its relative interior."""
        if not self.contains(x):
            raise ValueError("point lies outside the polyhedron")
        tight = [f for f, (a, c) in zip(self.hom.facets, self.inequalities) if dot(a, x) == c]
        rays = frozenset(
            r for r in self.hom.rays if all(dot(f, r) == 0 for f in tight)
        )
        return self._descriptor_from_hom_rays(rays)

    def face_points(self, face: FaceDescriptor) -> tuple[QPoint, ...]:
        return tuple(self.vertices[i] for i in face.vertex_indices)

    def face_lattice_points(self, face: FaceDescriptor) -> tuple[Vec, ...]:
        """Integer points of a compact face (box scan + tightness filter)."""
        if not face.is_compact:
            raise ValueError("lattice points requested for a non-compact face")
        verts = self.face_points(face)
        tight = [self.inequalities[i] for i in face.tight_inequality_indices]
        out = []
        for x in _box_lattice_points(verts):
            if self.contains(x) and all(dot(a, x) == c for a, c in tight):
                out.append(x)
        return tuple(sorted(out))

    # -- derived geometry ----------------------------------------------------

    def lattice_points(self, limits: Limits = DEFAULT_LIMITS) -> tuple[Vec, ...]:
        if not self.is_bounded:
            raise ValueError("lattice point enumeration requires a bounded polyhedron")
        size = 1
        for lo, hi in _bounding_box(self.vertices):
            size *= max(0, hi - lo + 1)
        if size > limits.enumeration_points:
            raise ResourceCapExceeded(
                f"bounding box holds {size} candidate points (cap {limits.enumeration_points})"
            )
        return tuple(sorted(x for x in _box_lattice_points(self.vertices) if self.contains(x)))

    def feasible_cone(self, v: Sequence) -> Cone:
        """Cone of directions from a vertex into the polyhedron."""
        vq = tuple(Fraction(x) for x in v)
        if vq not in self.vertices:
            raise ValueError("feasible cones are only defined at vertices")
        gens = [primitive_rational(tuple(a - b for a, b in zip(w, vq)))
                for w in self.vertices if w != vq]
        gens += list(self.recession.rays)
        return Cone(gens, self.dim)

    def intersect_with_cone(self, c: Cone) -> "RationalPolyhedron | None":
        """Intersection with a pointed cone through the origin; None if empty."""
        if c.dim != self.dim:
            raise ValueError("dimension mismatch")
        wedge = Cone(
            [r + (0,) for r in c.rays] + [(0,) * self.dim + (1,)], self.dim + 1
        )
        hom = self.hom.intersection(wedge)
        if all(r[-1] == 0 for r in hom.rays):
            return None
        return RationalPolyhedron._from_hom(hom, self.dim)

    def translate(self, t: Sequence) -> "RationalPolyhedron":
        return RationalPolyhedron(
            [tuple(x + s for x, s in zip(v, t)) for v in self.vertices],
            self.recession,
            self.dim,
        )


# ---------------------------------------------------------------------------
# helpers

def _bounding_box(points: Sequence[QPoint]) -> list[tuple[int, int]]:
    dim = len(points[0])
    box = []
    for i in range(dim):
        vals = [p[i] for p in points]
        box.append((math.ceil(min(vals)), math.floor(max(vals))))
    return box


def _box_lattice_points(points: Sequence[QPoint]):
    ranges = [range(lo, hi + 1) for lo, hi in _bounding_box(points)]
    yield from iterproduct(*ranges)


def minkowski_polyhedron(points: Iterable[Sequence], recession: Cone) -> RationalPolyhedron:
    """Conv(points) + recession, the Newton-polyhedron construction.

    A generator lying in another generator plus the recession cone is shed
    first: homogenized it is a positive combination of the survivors, so the
    polyhedron is unchanged. For a planar full-dimensional recession cone the
    test is weak domination on the two facet values — a sort and sweep — and
    it tames the quadratically many exponent points the Newton construction
    feeds in.
    """
    pts = [tuple(p) for p in points]
    if recession.dim == 2 and recession.is_fulldim and len(pts) > 3:
        f1, f2 = recession.facets
        best = None
        kept = []
        for x, y, p in sorted((dot(f1, p), dot(f2, p), p) for p in set(pts)):
            if best is None or y < best:
                kept.append(p)
                best = y
        pts = kept
    return RationalPolyhedron(pts, recession)


def convex_hull(points: Iterable[Sequence]) -> RationalPolyhedron:
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("hull of no points")
    return RationalPolyhedron(pts, Cone((), len(pts[0])))
