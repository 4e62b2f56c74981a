"""Pointed rational polyhedral cones with exact double-description duality.

One geometric primitive carries the whole module:
:func:`extreme_rays_of_inequality_cone` converts a finite inequality system
``{x : <a_i, x> >= 0}`` into its extreme rays, exactly. Facet enumeration,
dual cones, vertex enumeration of polyhedra (via homogenization) and cone
intersections are all phrasings of that one conversion, so there is exactly
one algorithm to trust and to test.

Cones of any dimension are supported by first passing to coordinates on the
saturated lattice of their linear span; pointedness is detected, and the few
operations that genuinely need pointedness (extreme rays) say so loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .intlinalg import (
    Vec,
    clear_denominators,
    dot,
    invariant_factors,
    is_zero,
    kernel_basis,
    primitive,
    rank,
    solve_rational,
    span_lattice,
    vadd,
    vscale,
    vsub,
)


def primitive_rational(v: Sequence) -> Vec:
    """Primitive integer vector on the ray through a nonzero rational vector."""
    return primitive(clear_denominators(v))


# ---------------------------------------------------------------------------
# double description

def extreme_rays_of_inequality_cone(normals: Sequence[Sequence[int]], dim: int) -> tuple[Vec, ...]:
    """Extreme rays of the pointed cone ``{x in R^dim : <a, x> >= 0 for all a}``.

    Incremental double description: seed with a maximal independent
    subsystem (whose solution basis gives the initial rays), then insert the
    remaining inequalities one at a time, pairing adjacent rays across the
    new hyperplane. Adjacency is the standard combinatorial test on zero
    sets, which is valid because the intermediate cone is pointed from the
    first step on.

    Raises ValueError when the normals do not span R^dim — the solution cone
    then contains a line and has no extreme rays.
    """
    if dim == 0:
        return ()
    seen: list[Vec] = []
    for a in normals:
        if not is_zero(a):
            p = primitive(a)
            if p not in seen:
                seen.append(p)

    base: list[int] = []
    base_rows: list[Vec] = []
    for i, a in enumerate(seen):
        if rank(base_rows + [a]) > len(base_rows):
            base.append(i)
            base_rows.append(a)
            if len(base_rows) == dim:
                break
    if len(base_rows) < dim:
        raise ValueError("inequality system does not span; the cone contains a line")

    rays: list[Vec] = []
    for j in range(dim):
        e = tuple(1 if k == j else 0 for k in range(dim))
        x = solve_rational(base_rows, e)
        assert x is not None
        rays.append(primitive_rational(x))
    # zero sets: indices (into `seen`) of the processed constraints tight at a ray
    zsets: list[frozenset[int]] = [frozenset(base) - {base[j]} for j in range(dim)]

    for i, a in enumerate(seen):
        if i in base:
            continue
        vals = [dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            zsets = [z | {i} if v == 0 else z for z, v in zip(zsets, vals)]
            continue
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        fresh: list[tuple[Vec, frozenset[int]]] = []
        for kp in pos:
            for kn in neg:
                common = zsets[kp] & zsets[kn]
                adjacent = not any(
                    common <= zsets[kt]
                    for kt in range(len(rays))
                    if kt != kp and kt != kn
                )
                if not adjacent:
                    continue
                r = vsub(vscale(vals[kp], rays[kn]), vscale(vals[kn], rays[kp]))
                fresh.append((primitive(r), common | {i}))
        kept_rays = []
        kept_zsets = []
        for k, v in enumerate(vals):
            if v < 0:
                continue
            kept_rays.append(rays[k])
            kept_zsets.append(zsets[k] | {i} if v == 0 else zsets[k])
        for r, z in fresh:
            kept_rays.append(r)
            kept_zsets.append(z)
        rays, zsets = kept_rays, kept_zsets

    return tuple(sorted(set(rays)))


# ---------------------------------------------------------------------------
# cones

class Cone:
    """A rational polyhedral cone in Z^dim, generated by integer vectors.

    Immutable as a value; the geometric caches (span, facets, rays, face
    lattice) fill lazily on first use. Equality and hashing go through the
    canonical sorted primitive ray set, so pointed cones behave as values in
    sets and dictionaries regardless of how they were generated.
    """

    def __init__(self, generators: Iterable[Sequence[int]], dim: int | None = None):
        gens = [tuple(g) for g in generators]
        if dim is None:
            if not gens:
                raise ValueError("ambient dimension required for a cone with no generators")
            dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise ValueError("generators of mixed dimension")
        self.dim = dim
        self.gens: tuple[Vec, ...] = tuple(
            sorted({primitive(g) for g in gens if not is_zero(g)})
        )

    # -- linear structure ---------------------------------------------------

    @cached_property
    def span(self):
        return span_lattice(self.gens, self.dim)

    @property
    def sdim(self) -> int:
        """Dimension of the cone (rank of its linear span)."""
        return self.span.rank

    @cached_property
    def _coord_gens(self) -> tuple[Vec, ...]:
        return tuple(self.span.coords(g) for g in self.gens)

    @cached_property
    def _coord_facets(self) -> tuple[Vec, ...]:
        if self.sdim == 0:
            return ()
        return extreme_rays_of_inequality_cone(self._coord_gens, self.sdim)

    @cached_property
    def facets(self) -> tuple[Vec, ...]:
        """Primitive facet normals (ambient functionals, inward).

        Together with :attr:`span_equations` they give the minimal
        H-representation: the cone is exactly the solutions of
        ``equation = 0`` and ``facet >= 0``.
        """
        return tuple(sorted(self.span.lift_functional(f) for f in self._coord_facets))

    @property
    def span_equations(self) -> tuple[Vec, ...]:
        return self.span.equations

    @cached_property
    def is_pointed(self) -> bool:
        if self.sdim == 0:
            return True
        return rank(self._coord_facets) == self.sdim

    @property
    def is_fulldim(self) -> bool:
        return self.sdim == self.dim

    @cached_property
    def rays(self) -> tuple[Vec, ...]:
        """Primitive generators of the extreme rays, sorted."""
        if self.sdim == 0:
            return ()
        if not self.is_pointed:
            raise ValueError("extreme rays are only defined for pointed cones")
        coord_rays = extreme_rays_of_inequality_cone(self._coord_facets, self.sdim)
        return tuple(sorted(tuple(self.span.lift(r)) for r in coord_rays))

    @cached_property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.sdim

    @cached_property
    def is_regular(self) -> bool:
        """Do the rays extend to a Z-basis of the ambient lattice?"""
        if not self.is_simplicial:
            return False
        return all(d == 1 for d in invariant_factors(self.rays))

    # -- membership and identity -------------------------------------------

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        if not self.span.contains(x):
            return False
        return all(dot(f, x) >= 0 for f in self.facets)

    def _key(self):
        if self.is_pointed:
            return ("rays", self.dim, self.rays)
        return ("gens", self.dim, self.gens)

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Cone(dim={self.dim}, gens={list(self.gens)})"

    # -- duality and combinatorics -------------------------------------------

    def dual(self) -> "Cone":
        """The dual cone {y : <x, y> >= 0 on the cone}.

        Defined here for full-dimensional pointed cones, where the dual is
        again full-dimensional and pointed and duality is an involution.
        """
        if not self.is_fulldim:
            raise ValueError("dual cone requires a full-dimensional cone")
        if not self.is_pointed:
            raise ValueError("dual cone requires a pointed cone")
        return Cone(self.facets, self.dim)

    @cached_property
    def face_ray_sets(self) -> frozenset[frozenset[Vec]]:
        """Every face, recorded as the frozenset of rays lying on it."""
        full = frozenset(self.rays)
        incidences = [
            frozenset(r for r in self.rays if dot(f, r) == 0) for f in self.facets
        ]
        found = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for s in frontier:
                for inc in incidences:
                    t = s & inc
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
            frontier = nxt
        return frozenset(found)

    def faces(self) -> tuple["Cone", ...]:
        """All faces as cones, ordered by dimension then ray set."""
        out = [Cone(sorted(s), self.dim) for s in self.face_ray_sets]
        return tuple(sorted(out, key=lambda c: (c.sdim, c.rays)))

    def facet_faces(self) -> tuple["Cone", ...]:
        out = []
        for f in self.facets:
            out.append(Cone([r for r in self.rays if dot(f, r) == 0], self.dim))
        return tuple(sorted(set(out), key=lambda c: c.rays))

    def is_face_of(self, other: "Cone") -> bool:
        return self.dim == other.dim and frozenset(self.rays) in other.face_ray_sets

    def minimal_face_containing(self, x: Sequence) -> "Cone":
        """The smallest face containing x (x must lie in the cone)."""
        if not self.contains(x):
            raise ValueError("point lies outside the cone")
        tight = [f for f in self.facets if dot(f, x) == 0]
        keep = [r for r in self.rays if all(dot(f, r) == 0 for f in tight)]
        return Cone(keep, self.dim)

    def intersection(self, other: "Cone") -> "Cone":
        """Intersection of two pointed cones (again pointed)."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        eqs = self.span.equations + other.span.equations
        normals = self.facets + other.facets
        if not eqs:
            rays = extreme_rays_of_inequality_cone(normals, self.dim)
            return Cone(rays, self.dim)
        basis = kernel_basis(eqs)
        if not basis:
            return Cone((), self.dim)
        restricted = [tuple(dot(f, b) for b in basis) for f in normals]
        coord_rays = extreme_rays_of_inequality_cone(restricted, len(basis))
        amb = []
        for r in coord_rays:
            v: tuple = (0,) * self.dim
            for c, b in zip(r, basis):
                v = vadd(v, vscale(c, b))
            amb.append(primitive(v))
        return Cone(amb, self.dim)

    def relative_interior_contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        if not self.span.contains(x):
            return False
        if self.sdim == 0:
            return is_zero(x)
        return all(dot(f, x) > 0 for f in self.facets)


# ---------------------------------------------------------------------------
# triangulation

def triangulate_cone(cone: Cone) -> tuple[tuple[Vec, ...], ...]:
    """Triangulate a pointed cone into simplicial subcones on its own rays.

    Pulling triangulation with respect to the global lexicographic order on
    primitive rays: pull at the smallest ray, triangulate the facets not
    containing it, and join. Pulling triangulations restrict to pulling
    triangulations on faces, so two cones sharing a face triangulate that
    face identically — which is what makes fan-wide simplicialization
    consistent.
    """
    if not cone.is_pointed:
        raise ValueError("triangulation requires a pointed cone")
    if cone.sdim == 0:
        return ()
    if cone.is_simplicial:
        return (cone.rays,)
    v = cone.rays[0]
    out: list[tuple[Vec, ...]] = []
    for f in cone.facets:
        if dot(f, v) <= 0:
            continue
        face = Cone([r for r in cone.rays if dot(f, r) == 0], cone.dim)
        for simplex in triangulate_cone(face):
            out.append(tuple(sorted(simplex + (v,))))
    result = tuple(sorted(out))
    if len(set(result)) != len(result):
        raise AssertionError("pulling triangulation produced a duplicate simplex")
    return result


# ---------------------------------------------------------------------------
# embedded lattices (sublattice coordinates at the IO / polytope boundary)

@dataclass(frozen=True)
class Lattice:
    """A finite-rank lattice, optionally embedded in a coordinate lattice.

    ``basis`` columns (when present) are a Z-basis of the lattice inside
    Z^ambient_dim; all kernel computations then happen in basis coordinates
    and this class converts at the boundary. ``basis=None`` means Z^ambient_dim.
    """

    ambient_dim: int
    basis: tuple[Vec, ...] | None = None

    def __post_init__(self):
        if self.basis is not None:
            if any(len(b) != self.ambient_dim for b in self.basis):
                raise ValueError("basis vectors of wrong dimension")
            if rank(self.basis) != len(self.basis):
                raise ValueError("basis vectors are linearly dependent")

    @property
    def rank(self) -> int:
        return self.ambient_dim if self.basis is None else len(self.basis)

    def to_coords(self, x: Sequence[int]) -> Vec:
        """Coordinates of an ambient lattice member w.r.t. the basis."""
        if self.basis is None:
            return tuple(x)
        m = tuple(zip(*self.basis))  # columns are basis vectors
        sol = solve_rational(m, x)
        if sol is None or any(f.denominator != 1 for f in sol):
            raise ValueError("vector is not in the lattice")
        return tuple(int(f) for f in sol)

    def to_ambient(self, y: Sequence) -> tuple:
        if self.basis is None:
            return tuple(y)
        out: tuple = (0,) * self.ambient_dim
        for c, b in zip(y, self.basis, strict=True):
            out = vadd(out, vscale(c, b))
        return out
