"""Fans: face-closed collections of pointed cones meeting along faces.

Construction always validates the fan property (every pairwise intersection
is a common face, computed exactly), so downstream algorithms can take it
for granted. Refinement is decided by exact volume accounting: each coarse
cone must be exactly filled, simplex by simplex, by the fine cones it
contains — no sampling, no tolerance.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone, triangulate_cone
from .hilbert import hilbert_elements
from .intlinalg import Vec, dot, is_zero, primitive
from .polyhedra import RationalPolyhedron


class Fan:
    """A fan in Z^dim, stored by its maximal cones."""

    def __init__(self, cones: Iterable[Cone], dim: int | None = None, validate: bool = True):
        cs = list(cones)
        if dim is None:
            if not cs:
                raise ValueError("ambient dimension required for an empty fan")
            dim = cs[0].dim
        if any(c.dim != dim for c in cs):
            raise ValueError("cones of mixed ambient dimension")
        for c in cs:
            if not c.is_pointed:
                raise ValueError("fans contain only pointed cones")
        cs = list(dict.fromkeys(cs))
        maximal = [c for c in cs if not any(c is not d and c.is_face_of(d) for d in cs)]
        self.dim = dim
        self.maximal_cones: tuple[Cone, ...] = tuple(
            sorted(maximal, key=lambda c: (c.sdim, c.rays))
        )
        if validate:
            self._validate()

    def _validate(self):
        ms = self.maximal_cones
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                meet = ms[i].intersection(ms[j])
                if not (meet.is_face_of(ms[i]) and meet.is_face_of(ms[j])):
                    raise ValueError(
                        f"not a fan: cones {ms[i].rays} and {ms[j].rays} "
                        "do not meet along a common face"
                    )

    # -- structure -----------------------------------------------------------

    @cached_property
    def _closure(self) -> tuple[Cone, ...]:
        seen: set[Cone] = set()
        for m in self.maximal_cones:
            seen.update(m.faces())
        return tuple(sorted(seen, key=lambda c: (c.sdim, c.rays)))

    def all_cones(self) -> tuple[Cone, ...]:
        return self._closure

    def cones_of_dim(self, i: int) -> tuple[Cone, ...]:
        return tuple(c for c in self._closure if c.sdim == i)

    @property
    def maxdim(self) -> int:
        return max((c.sdim for c in self.maximal_cones), default=0)

    @cached_property
    def rays(self) -> tuple[Vec, ...]:
        out: set[Vec] = set()
        for m in self.maximal_cones:
            out.update(m.rays)
        return tuple(sorted(out))

    def skeleton(self, i: int) -> tuple[Cone, ...]:
        """All cones of dimension at most i."""
        if not 0 <= i <= self.dim:
            raise ValueError("skeleton index out of range")
        return tuple(c for c in self._closure if c.sdim <= i)

    def support_contains(self, x: Sequence) -> bool:
        return any(m.contains(x) for m in self.maximal_cones)

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self.dim == other.dim and self.maximal_cones == other.maximal_cones

    def __hash__(self):
        return hash((self.dim, self.maximal_cones))

    def __repr__(self):
        return f"Fan(dim={self.dim}, maximal={len(self.maximal_cones)})"


def fan_from_cone(cone: Cone) -> Fan:
    """The fan of all faces of a single pointed cone."""
    if not cone.is_pointed:
        raise ValueError("only pointed cones define fans")
    return Fan([cone], cone.dim, validate=False)


# ---------------------------------------------------------------------------
# refinement and subdivision

def _contains_cone(big: Cone, small: Cone) -> bool:
    return all(big.contains(r) for r in small.rays)


def _pieces_cover(big: Cone, pieces: list[Cone]) -> bool:
    """Do same-dimension fan pieces inside ``big`` fill it completely?

    Exact combinatorial criterion: every facet of every piece either lies on
    the boundary of ``big`` (its ray-sum is tight on one of big's facets) or
    is shared by exactly two pieces. Because the pieces come from a valid
    fan, a one-sided interior facet is precisely a hole in the coverage.
    """
    s = big.sdim
    if s == 0:
        return True
    if not pieces:
        return False
    if s == 1:
        return any(p == big for p in pieces)
    counts: dict[frozenset, int] = {}
    for p in pieces:
        for facet_face in p.facet_faces():
            key = frozenset(facet_face.rays)
            counts[key] = counts.get(key, 0) + 1
    for ray_set, n in counts.items():
        if n == 2:
            continue
        if n > 2:
            return False  # impossible for a valid fan; defensive
        x: tuple = (0,) * big.dim
        for r in ray_set:
            x = tuple(a + b for a, b in zip(x, r))
        if not any(dot(g, x) == 0 for g in big.facets):
            return False
    return True


def is_refinement(fine: Fan, coarse: Fan) -> bool:
    """Same support, with every fine cone inside some coarse cone — exactly.

    Containment is ray membership. Support equality reduces to coverage of
    each coarse cone by the fine cones of its own dimension inside it, which
    :func:`_pieces_cover` decides combinatorially, with no sampling.
    """
    if fine.dim != coarse.dim:
        return False
    for piece in fine.maximal_cones:
        if not any(_contains_cone(big, piece) for big in coarse.maximal_cones):
            return False
    for big in coarse.maximal_cones:
        pieces = [
            p for p in fine.maximal_cones
            if p.sdim == big.sdim and _contains_cone(big, p)
        ]
        if not _pieces_cover(big, pieces):
            return False
    return True


def star_subdivision(fan: Fan, gamma: Sequence[int]) -> Fan:
    """Refine by starring at a primitive lattice vector inside the support.

    Every maximal cone containing γ is replaced by the joins of γ with its
    facets that avoid γ; cones not containing γ survive unchanged. Starring
    at an existing ray reproduces the fan.
    """
    g = tuple(gamma)
    if is_zero(g) or primitive(g) != g:
        raise ValueError("star subdivision requires a primitive nonzero vector")
    if not fan.support_contains(g):
        raise ValueError("subdivision point lies outside the fan's support")
    fresh: list[Cone] = []
    for m in fan.maximal_cones:
        if not m.contains(g):
            fresh.append(m)
            continue
        for f in m.facets:
            if dot(f, g) <= 0:
                continue
            face_rays = [r for r in m.rays if dot(f, r) == 0]
            fresh.append(Cone(face_rays + [g], fan.dim))
    return Fan(fresh, fan.dim)


def simplicialize(fan: Fan) -> Fan:
    """A simplicial refinement on the same rays.

    Each maximal cone is pulled apart along the global lexicographic ray
    order; pulling triangulations restrict compatibly to shared faces, which
    the fan validation re-checks on construction.
    """
    fresh: list[Cone] = []
    for m in fan.maximal_cones:
        if m.sdim == 0:
            fresh.append(m)
            continue
        for simplex in triangulate_cone(m):
            fresh.append(Cone(simplex, fan.dim))
    return Fan(fresh, fan.dim)


# ---------------------------------------------------------------------------
# Hilbert data and measures

def fan_hilbert_union(fan: Fan, limits: Limits = DEFAULT_LIMITS) -> tuple[Vec, ...]:
    """Union of the Hilbert bases of all cones of the fan."""
    return fan_hilbert_union_report(fan, limits)[0]


def fan_hilbert_union_report(fan: Fan, limits: Limits = DEFAULT_LIMITS):
    """(union over all cones, elements seen only on proper faces).

    The union over maximal cones is expected to suffice, but that containment
    is a theorem about G-stable cones, not arbitrary ones — so it is measured
    here rather than assumed. A nonempty second component is the discrepancy.
    """
    from_max: set[Vec] = set()
    for m in fan.maximal_cones:
        from_max.update(hilbert_elements(m, limits))
    full = set(from_max)
    face_only: set[Vec] = set()
    for c in fan.all_cones():
        for h in hilbert_elements(c, limits):
            if h not in from_max:
                face_only.add(h)
            full.add(h)
    return tuple(sorted(full)), tuple(sorted(face_only))


def measure_M(fan: Fan, i: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """max #G(σ) − i over the i-dimensional cones (0 when there are none)."""
    sizes = [len(hilbert_elements(c, limits)) for c in fan.cones_of_dim(i)]
    if not sizes:
        return 0
    return max(sizes) - i

def measure_N(fan: Fan, i: int, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of i-cones with #G(σ) − i ≥ max(M(i), 1) — the worst offenders."""
    m = max(measure_M(fan, i, limits), 1)
    return sum(
        1 for c in fan.cones_of_dim(i) if len(hilbert_elements(c, limits)) - i >= m
    )


# ---------------------------------------------------------------------------
# normal fans

def normal_fan(poly: RationalPolyhedron) -> Fan:
    """The fan of duals of the feasible cones at the vertices.

    Feasible cones include the recession cone, so for unbounded polyhedra
    the fan covers only the directions bounded below on the polyhedron —
    exactly the dual of the recession cone.
    """
    if not poly.is_fulldim():
        raise ValueError("normal fans are defined here for full-dimensional polyhedra")
    if not poly.vertices:
        raise ValueError("normal fans need at least one vertex")
    maximal = [poly.feasible_cone(v).dual() for v in poly.vertices]
    return Fan(maximal, poly.dim)
