"""Lattice polytopes: height-1 cones, G-flatness, smoothness, corners,
barycentric hulls, and one-step resolution via a single blowup.

Central objects for a full-dimensional lattice polytope P:

  ω_P        the cone over P lifted to height 1 — P is *G-flat* when the
             Hilbert basis of ω_P sits entirely at height 1;
  corners    at each vertex, the unimodular simplex of nearest lattice
             points along the adjacent edges (needs P smooth);
  B(P)       the barycentric hull: convex hull of the barycenters of all
             full-dimensional simplices on P's lattice points.

For smooth P the hull is exactly the convex hull of the corner barycenters,
with a vertex/edge correspondence and identical feasible cones; when P is
also G-flat, a single normalized Nash blowup of the ω_P-variety is already
regular, in every characteristic. Both statements are re-verified here
instance by instance, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone, Lattice
from .errors import KernelInvariantError, ResourceCapExceeded
from .hilbert import hilbert_elements
from .intlinalg import (
    QVec,
    Vec,
    det,
    hermite_normal_form,
    invariant_factors,
    is_zero,
    primitive,
    vadd,
    vsub,
)
from .nash import nash_blowup_fan, relevant_primes
from .polyhedra import RationalPolyhedron


class LatticePolytope:
    """Bounded convex hull of integer points, with exact face data."""

    def __init__(self, points: Iterable[Sequence[int]], lattice: Lattice | None = None):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("a lattice polytope needs at least one point")
        self.dim = len(pts[0])
        if lattice is None:
            lattice = Lattice(self.dim)
        if lattice.rank != self.dim:
            raise ValueError("polytope coordinates must use the full lattice rank")
        self.lattice = lattice
        self.poly = RationalPolyhedron(pts, dim=self.dim)

    @cached_property
    def vertices(self) -> tuple[Vec, ...]:
        return tuple(
            tuple(int(x) for x in v) for v in self.poly.vertices
        )

    def lattice_points(self, limits: Limits = DEFAULT_LIMITS) -> tuple[Vec, ...]:
        return self.poly.lattice_points(limits)

    @property
    def affine_dim(self) -> int:
        return self.poly.affine_dim

    def is_fulldim(self) -> bool:
        return self.affine_dim == self.dim

    def contains(self, x: Sequence) -> bool:
        return self.poly.contains(x)

    def edges(self) -> tuple[tuple[Vec, Vec], ...]:
        """Vertex pairs of the 1-faces."""
        out = []
        for f in self.poly.faces:
            if f.dim == 1:
                a, b = (self.vertices[i] for i in f.vertex_indices)
                out.append((a, b))
        return tuple(sorted(out))

    def feasible_cone(self, v: Sequence) -> Cone:
        return self.poly.feasible_cone(v)

    def translated(self, b: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([vadd(v, tuple(b)) for v in self.vertices], self.lattice)

    def recoordinated(self) -> "LatticePolytope":
        """The same polytope, full-dimensional in its affine-span lattice.

        Translates the least vertex to the origin and rewrites points in
        coordinates of the saturated span lattice, so lattice points map to
        lattice points bijectively.
        """
        from .intlinalg import span_lattice

        v0 = self.vertices[0]
        diffs = [vsub(v, v0) for v in self.vertices]
        span = span_lattice(diffs, self.dim)
        return LatticePolytope([span.coords(d) for d in diffs])

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.lattice == other.lattice and self.poly == other.poly

    def __hash__(self):
        return hash((self.lattice, self.poly))

    def __repr__(self):
        return f"LatticePolytope(dim={self.dim}, vertices={len(self.vertices)})"


# ---------------------------------------------------------------------------
# the height-1 cone and G-flatness

def omega_cone(p: LatticePolytope) -> Cone:
    """Cone over P placed at height 1 in lattice × Z."""
    return Cone([v + (1,) for v in p.vertices], p.dim + 1)


@dataclass(frozen=True)
class GFlatReport:
    is_g_flat: bool
    # Hilbert elements of ω_P at height ≠ 1, sorted
    offenders: tuple[Vec, ...]


def is_g_flat(p: LatticePolytope, limits: Limits = DEFAULT_LIMITS) -> GFlatReport:
    """Does the Hilbert basis of ω_P lie entirely at height 1?

    When it does, that basis must be exactly {(m, 1) : m ∈ P ∩ M}: height-1
    points are irreducible (heights add) and lie in P. This is re-checked
    rather than trusted.
    """
    basis = hilbert_elements(omega_cone(p), limits)
    offenders = tuple(sorted(h for h in basis if h[-1] != 1))
    if not offenders:
        expected = {m + (1,) for m in p.lattice_points(limits)}
        if set(basis) != expected:
            raise KernelInvariantError(
                "height-1 Hilbert basis of the lifted cone must equal the "
                "lattice points of the polytope at height 1"
            )
    return GFlatReport(not offenders, offenders)


# ---------------------------------------------------------------------------
# smoothness and corners

def _edge_directions(p: LatticePolytope) -> dict[Vec, tuple[Vec, ...]]:
    """Primitive direction of every edge, grouped by endpoint."""
    at: dict[Vec, list[Vec]] = {v: [] for v in p.vertices}
    for a, b in p.edges():
        at[a].append(primitive(vsub(b, a)))
        at[b].append(primitive(vsub(a, b)))
    return {v: tuple(sorted(dirs)) for v, dirs in at.items()}


def is_smooth(p: LatticePolytope) -> bool:
    """Do the primitive edge directions at every vertex form a Z-basis?"""
    if not p.is_fulldim():
        raise ValueError(
            "smoothness is defined for full-dimensional polytopes; "
            "re-coordinate lower-dimensional ones first"
        )
    if len(p.vertices) == 1:
        return p.dim == 0
    for dirs in _edge_directions(p).values():
        if len(dirs) != p.dim:
            return False
        if any(f != 1 for f in invariant_factors(dirs)):
            return False
    return True


@dataclass(frozen=True)
class Corner:
    """The unimodular simplex of nearest lattice points at a vertex."""

    vertex: Vec
    neighbors: tuple[Vec, ...]  # vertex + primitive edge direction, per edge
    barycenter: QVec

    @property
    def points(self) -> tuple[Vec, ...]:
        return (self.vertex,) + self.neighbors


def _is_unimodular_simplex(p: LatticePolytope) -> bool:
    if len(p.vertices) != p.dim + 1:
        return False
    v0 = p.vertices[0]
    return abs(det([vsub(v, v0) for v in p.vertices[1:]])) == 1


def _barycenter(points: Sequence[Sequence]) -> QVec:
    n = len(points)
    return tuple(Fraction(sum(col), n) for col in zip(*points))


def corners(p: LatticePolytope) -> tuple[Corner, ...]:
    """One corner per vertex; a unimodular simplex is its own single corner."""
    if not is_smooth(p):
        raise ValueError("corners are defined for smooth polytopes")
    if _is_unimodular_simplex(p):
        v0 = p.vertices[0]
        return (Corner(v0, p.vertices[1:], _barycenter(p.vertices)),)
    out = []
    for v, dirs in sorted(_edge_directions(p).items()):
        neighbors = tuple(sorted(vadd(v, u) for u in dirs))
        for n in neighbors:
            if not p.contains(n):
                raise KernelInvariantError(
                    "nearest edge lattice point escaped the polytope"
                )
        out.append(Corner(v, neighbors, _barycenter((v,) + neighbors)))
    return tuple(out)


# ---------------------------------------------------------------------------
# barycentric hulls

@dataclass(frozen=True)
class BaryHull:
    """Barycenters of all full-dimensional lattice-point simplices."""

    simplex_count: int
    barycenters: tuple[QVec, ...]
    hull_vertices: tuple[QVec, ...]
    hull: RationalPolyhedron = field(repr=False)


def barycentric_hull(p: LatticePolytope, limits: Limits = DEFAULT_LIMITS) -> BaryHull:
    if not p.is_fulldim():
        raise ValueError("barycentric hulls need a full-dimensional polytope")
    pts = p.lattice_points(limits)
    d = p.dim
    if len(pts) > limits.baryhull_points:
        raise ResourceCapExceeded(
            f"{len(pts)} lattice points exceed the barycentric-hull cap of "
            f"{limits.baryhull_points}"
        )
    if comb(len(pts), d + 1) > limits.baryhull_simplices:
        raise ResourceCapExceeded(
            f"{comb(len(pts), d + 1)} candidate simplices exceed the cap of "
            f"{limits.baryhull_simplices}"
        )
    count = 0
    barycenters: set[QVec] = set()
    for subset in combinations(pts, d + 1):
        base = subset[0]
        if det([vsub(q, base) for q in subset[1:]]) == 0:
            continue
        count += 1
        barycenters.add(_barycenter(subset))
    hull = RationalPolyhedron(barycenters, dim=d)
    return BaryHull(count, tuple(sorted(barycenters)), hull.vertices, hull)


@dataclass(frozen=True)
class BaryhullReport:
    """Clause-by-clause verification of the corner description of B(P).

    For a unimodular simplex the hull is a single point and the bijection,
    edge, and feasible-cone clauses are vacuous; ``simplex_case`` records
    that this branch was taken.
    """

    simplex_case: bool
    hull_matches_corners: bool
    vertex_bijection: bool
    edges_parallel: bool
    feasible_cones_match: bool
    hull_smooth: bool
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _parallel(u: Sequence, v: Sequence) -> bool:
    if is_zero(u) or is_zero(v):
        return False
    return all(
        u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u))
    )


def _scaled_to_lattice(points: Sequence[QVec], factor: int) -> LatticePolytope:
    scaled = [tuple(Fraction(x) * factor for x in q) for q in points]
    if any(x.denominator != 1 for q in scaled for x in q):
        raise KernelInvariantError(
            f"barycenters should clear denominators at scale {factor}"
        )
    return LatticePolytope([tuple(int(x) for x in q) for q in scaled])


def verify_baryhull_theorem(
    p: LatticePolytope, limits: Limits = DEFAULT_LIMITS
) -> BaryhullReport:
    if not is_smooth(p):
        raise ValueError("the barycentric-hull description applies to smooth polytopes")
    cs = corners(p)
    bh = barycentric_hull(p, limits)
    failures: list[str] = []

    corner_barys = {c.barycenter for c in cs}
    hull_ok = set(bh.hull_vertices) == corner_barys
    if not hull_ok:
        failures.append("hull-vertices-differ-from-corner-barycenters")

    if _is_unimodular_simplex(p):
        if len(bh.hull_vertices) != 1:
            hull_ok = False
            failures.append("simplex-hull-not-a-point")
        return BaryhullReport(True, hull_ok, True, True, True, True, tuple(failures))

    by_vertex = {c.vertex: c.barycenter for c in cs}
    bijection = len(set(by_vertex.values())) == len(p.vertices) and hull_ok
    if not bijection:
        failures.append("corner-map-not-a-bijection")

    hull_edges = {
        frozenset(bh.hull.vertices[i] for i in f.vertex_indices)
        for f in bh.hull.faces
        if f.dim == 1
    }
    edges_ok = True
    for a, b in p.edges():
        ca, cb = by_vertex[a], by_vertex[b]
        if frozenset((ca, cb)) not in hull_edges:
            edges_ok = False
        elif not _parallel(vsub(b, a), tuple(x - y for x, y in zip(cb, ca))):
            edges_ok = False
    if len(hull_edges) != len(p.edges()):
        edges_ok = False
    if not edges_ok:
        failures.append("edge-correspondence-failed")

    fcones_ok = all(
        p.feasible_cone(v) == bh.hull.feasible_cone(c) for v, c in by_vertex.items()
    )
    if not fcones_ok:
        failures.append("feasible-cones-differ")

    scaled = _scaled_to_lattice(bh.hull_vertices, p.dim + 1)
    smooth_ok = scaled.is_fulldim() and is_smooth(scaled)
    if not smooth_ok:
        failures.append("hull-not-smooth")

    return BaryhullReport(
        False, hull_ok, bijection, edges_ok, fcones_ok, smooth_ok, tuple(failures)
    )


# ---------------------------------------------------------------------------
# one-step resolution

@dataclass(frozen=True)
class OneStepReport:
    """Blowup verdicts for the ω_P-variety across characteristics.

    ``hypotheses_hold`` records smooth + G-flat; the blowup verdicts are
    computed either way. With the hypotheses, equality of the char-0 and
    char-p Newton vertex sets is enforced for every relevant prime.
    """

    smooth: bool
    g_flat: bool
    characteristics: tuple[int, ...]  # 0 followed by the relevant primes
    verdicts: tuple[tuple[int, bool], ...]  # (characteristic, blowup regular?)
    resolved: bool
    characteristic_independent: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.smooth and self.g_flat


def one_step_resolution(
    p: LatticePolytope, limits: Limits = DEFAULT_LIMITS
) -> OneStepReport:
    smooth = is_smooth(p)
    g_flat = is_g_flat(p, limits).is_g_flat
    sigma = omega_cone(p).dual()
    primes = relevant_primes(sigma, limits)
    chars = (0,) + primes
    verdicts = []
    vertex_sets = {}
    for c in chars:
        result = nash_blowup_fan(sigma, c, limits)
        verdicts.append((c, result.smooth))
        vertex_sets[c] = set(result.newton.vertices)
    if smooth and g_flat:
        for c in primes:
            if vertex_sets[c] != vertex_sets[0]:
                raise KernelInvariantError(
                    "smooth + G-flat input produced characteristic-dependent "
                    f"Newton vertices at p={c}"
                )
    flags = [ok for _, ok in verdicts]
    return OneStepReport(
        smooth,
        g_flat,
        chars,
        tuple(verdicts),
        all(flags),
        len(set(flags)) == 1,
    )


# ---------------------------------------------------------------------------
# unimodular maps

def apply_unimodular_map(
    p: LatticePolytope, a: Sequence[Sequence[int]], b: Sequence[int]
) -> LatticePolytope:
    """The image polytope under x ↦ Ax + b with A unimodular.

    Also replays the map on the lifted cones: (x, h) ↦ (Ax + hb, h) must send
    ω_P onto ω_{image} exactly — a cheap identity that exercises the whole
    cone pipeline, so it is asserted on every call.
    """
    a = tuple(tuple(int(x) for x in row) for row in a)
    b = tuple(int(x) for x in b)
    if abs(det(a)) != 1:
        raise ValueError("the linear part must be unimodular")
    rows = len(a)

    def image(v: Sequence[int]) -> Vec:
        return tuple(
            sum(a[i][j] * v[j] for j in range(rows)) + b[i] for i in range(rows)
        )

    def lift(r: Sequence[int]) -> Vec:
        h = r[-1]
        return tuple(
            sum(a[i][j] * r[j] for j in range(rows)) + h * b[i] for i in range(rows)
        ) + (h,)

    q = LatticePolytope([image(v) for v in p.vertices], p.lattice)
    if Cone([lift(r) for r in omega_cone(p).rays], p.dim + 1) != omega_cone(q):
        raise KernelInvariantError("unimodular map failed to transport the lifted cone")
    return q


# ---------------------------------------------------------------------------
# families

def standard_simplex(d: int, scale: int = 1) -> LatticePolytope:
    """k·S_d = Conv(0, k·e_1, ..., k·e_d)."""
    if d < 1 or scale < 1:
        raise ValueError("dimension and scale must be positive")
    zero = (0,) * d
    return LatticePolytope(
        [zero] + [tuple(scale if j == i else 0 for j in range(d)) for i in range(d)]
    )


def unit_cube(d: int) -> LatticePolytope:
    if d < 1:
        raise ValueError("dimension must be positive")
    corners_ = [[]]
    for _ in range(d):
        corners_ = [c + [x] for c in corners_ for x in (0, 1)]
    return LatticePolytope(corners_)


def triangle_family(n: int) -> LatticePolytope:
    """Conv((0,0), (n,0), (0,1)) — non-smooth for n > 1, yet one-step resolvable."""
    if n < 1:
        raise ValueError("n must be positive")
    return LatticePolytope([(0, 0), (n, 0), (0, 1)])


def rhombus() -> LatticePolytope:
    return LatticePolytope([(1, 0), (-1, 0), (0, 1), (0, -1)])


def hexagon() -> LatticePolytope:
    """The smooth hexagon with 6 vertices around the origin (7 lattice points)."""
    return LatticePolytope(
        [(0, 0), (1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
    )


def minkowski_sum_polygon(directions: Sequence[Sequence[int]]) -> LatticePolytope:
    """Sum of the segments [0, u] over the given 2d directions."""
    if any(len(u) != 2 for u in directions):
        raise ValueError("directions must be two-dimensional")
    points = {(0, 0)}
    for u in directions:
        u = tuple(int(x) for x in u)
        points |= {vadd(q, u) for q in points}
    return LatticePolytope(points)


def product_polytope(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    return LatticePolytope([a + b for a in p.vertices for b in q.vertices])


@dataclass(frozen=True)
class SimplexProduct:
    """Δ_{m-1} × Δ_{n-1} with its vertex cone in coordinates of ZA.

    ``points`` are the mn vertices (e_i, f_j) in the ambient lattice; they
    span a lattice ZA of rank m+n−1, and ``cone`` is Cone(points) rewritten
    in a basis of that lattice, where it is full-dimensional and pointed.
    """

    m: int
    n: int
    points: tuple[Vec, ...]
    lattice: Lattice
    cone: Cone


def product_of_simplices(
    m: int, n: int, limits: Limits = DEFAULT_LIMITS
) -> SimplexProduct:
    if m < 2 or n < 2:
        raise ValueError("both simplex sizes must be at least 2")
    if m * n > limits.simplex_product_size:
        raise ResourceCapExceeded(
            f"product size {m * n} exceeds the cap of {limits.simplex_product_size}"
        )
    points = tuple(
        tuple(1 if k == i else 0 for k in range(m))
        + tuple(1 if k == j else 0 for k in range(n))
        for i in range(m)
        for j in range(n)
    )
    h, _ = hermite_normal_form(points)
    basis = tuple(row for row in h if not is_zero(row))
    if len(basis) != m + n - 1:
        raise KernelInvariantError(
            f"the vertex lattice of the simplex product must have rank {m + n - 1}"
        )
    lattice = Lattice(m + n, basis)
    cone = Cone([lattice.to_coords(p) for p in points], m + n - 1)
    return SimplexProduct(m, n, tuple(sorted(points)), lattice, cone)


def cube_staircase_triangulation(d: int) -> tuple[LatticePolytope, ...]:
    """The d! order simplices 0 ≤ x_{π(1)} ≤ ... ≤ x_{π(d)} ≤ 1 of [0,1]^d.

    Each simplex is verified unimodular; being d! distinct unimodular
    simplices inside the unit cube, their volumes sum to exactly the cube's,
    so they tile it.
    """
    if not 2 <= d <= 5:
        raise ValueError("the staircase triangulation is provided for 2 <= d <= 5")
    out = []
    for pi in permutations(range(d)):
        # vertex chain: start at 0, raise coordinates in reverse pi order
        chain = [(0,) * d]
        for k in reversed(pi):
            chain.append(vadd(chain[-1], tuple(1 if j == k else 0 for j in range(d))))
        simplex = LatticePolytope(chain)
        if not _is_unimodular_simplex(simplex):
            raise KernelInvariantError("staircase simplex failed the unimodularity check")
        out.append(simplex)
    if len({s for s in out}) != factorial(d):
        raise KernelInvariantError("staircase simplices are not pairwise distinct")
    return tuple(out)


# ---------------------------------------------------------------------------
# smooth corpus and the hunt for non-G-flat smooth polytopes

def smooth_corpus() -> tuple[tuple[str, LatticePolytope], ...]:
    """A curated, deterministic family of smooth polytopes in dims 2 and 3."""
    shear = apply_unimodular_map(unit_cube(2), ((1, 1), (0, 1)), (0, 0))
    shifted = standard_simplex(2, 2).translated((3, -2))
    entries: list[tuple[str, LatticePolytope]] = [
        ("unit-square", unit_cube(2)),
        ("unit-cube", unit_cube(3)),
        ("simplex-2d-scale-1", standard_simplex(2, 1)),
        ("simplex-2d-scale-2", standard_simplex(2, 2)),
        ("simplex-2d-scale-3", standard_simplex(2, 3)),
        ("simplex-3d", standard_simplex(3, 1)),
        ("hexagon", hexagon()),
        ("minkowski-hexagon", minkowski_sum_polygon([(1, 0), (0, 1), (1, 1)])),
        ("minkowski-wide", minkowski_sum_polygon([(1, 0), (0, 1), (1, -1)])),
        ("sheared-square", shear),
        ("translated-2-simplex", shifted),
        ("prism", product_polytope(standard_simplex(2, 1), unit_cube(1))),
    ]
    for name, p in entries:
        if not is_smooth(p):
            raise KernelInvariantError(f"corpus polytope {name} is not smooth")
    return tuple(entries)


def hunt_non_g_flat(
    limits: Limits = DEFAULT_LIMITS,
) -> tuple[tuple[str, tuple[Vec, ...]], ...]:
    """Scan the smooth corpus for G-flatness failures.

    Whether smoothness forces G-flatness is open; this reports evidence in
    either direction and asserts nothing.
    """
    findings = []
    for name, p in smooth_corpus():
        report = is_g_flat(p, limits)
        if not report.is_g_flat:
            findings.append((name, report.offenders))
    return tuple(findings)
