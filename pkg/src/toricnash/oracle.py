"""Independent cross-checks of the kernel by bounded brute force.

Everything here recomputes results along a second, dumber route — enumerate
lattice points in a box, filter, take hulls — and compares with the optimized
kernel answer exactly. A disagreement is reported as a failed check and is
always a bug somewhere, never noise, because both routes are exact.

The random two-dimensional batch doubles as an empirical test of two facts
that hold in the plane: every pointed 2D cone is G-stable, and consecutive
elements of its Hilbert basis (in rotational order) span unimodular
parallelograms. The batch also confirms that the one-step Nash data agrees
across all relevant characteristics on each sampled cone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone
from .gstable import gamma_plus, is_g_stable
from .hilbert import grading_functional, hilbert_elements
from .intlinalg import Vec, dot, vsub
from .nash import compare_characteristics
from .polyhedra import RationalPolyhedron, convex_hull


@dataclass(frozen=True)
class OracleCheck:
    label: str
    passed: bool
    detail: str = ""


# ---------------------------------------------------------------------------
# bounded enumeration

def semigroup_points_below(cone: Cone, bound: int, limits: Limits = DEFAULT_LIMITS) -> tuple[Vec, ...]:
    """All nonzero x in the semigroup of ``cone`` with grading value <= bound.

    Every such x is a subconvex combination of the rays scaled to grading
    exactly ``bound``, so the region sits inside the simplex on those scaled
    rays and the origin; that simplex is enumerated through the generic
    bounded lattice-point walk, deliberately bypassing the parallelepiped
    machinery under test.
    """
    if cone.sdim == 0:
        return ()
    g = grading_functional(cone)
    corners: list[tuple] = [(0,) * cone.dim]
    for r in cone.rays:
        corners.append(tuple(Fraction(bound * x, dot(g, r)) for x in r))
    box = RationalPolyhedron(corners, dim=cone.dim)
    pts = [
        p for p in box.lattice_points(limits)
        if 0 < dot(g, p) <= bound and cone.contains(p)
    ]
    return tuple(sorted(pts))


def brute_force_hilbert(cone: Cone, limits: Limits = DEFAULT_LIMITS, factor: int = 3) -> tuple[Vec, ...]:
    """Hilbert basis by irreducibility filtering over a bounded enumeration.

    The bound is ``factor`` times the largest grading value on the kernel's
    basis, so every irreducible element and every witness of reducibility is
    inside the enumerated region; the filter itself never consults the
    kernel's algorithm.
    """
    if cone.sdim == 0:
        return ()
    if not cone.is_pointed:
        raise ValueError("Hilbert bases require a pointed cone")
    g = grading_functional(cone)
    maxg = max(dot(g, h) for h in hilbert_elements(cone, limits))
    pts = set(semigroup_points_below(cone, factor * maxg, limits))
    irreducible = [
        x for x in pts
        if not any(dot(g, a) < dot(g, x) and vsub(x, a) in pts for a in pts)
    ]
    return tuple(sorted(irreducible))


# ---------------------------------------------------------------------------
# cone-level verification

def _bounded_hull_compact_faces(cone: Cone, limits: Limits):
    """Vertex sets of the ``genuine`` faces of the bounded semigroup hull.

    Faces of Conv(semigroup points with grading <= 3*maxg) all of whose
    vertices have grading <= maxg are unaffected by the artificial cut, so
    they must coincide with the compact faces of the semigroup hull proper.
    """
    g = grading_functional(cone)
    maxg = max(dot(g, h) for h in hilbert_elements(cone, limits))
    pts = semigroup_points_below(cone, 3 * maxg, limits)
    hull = convex_hull(pts)
    genuine_vertices = set()
    for v in hull.vertices:
        iv = tuple(int(x) for x in v)
        if all(x.denominator == 1 for x in v) and dot(g, iv) <= maxg:
            genuine_vertices.add(iv)
    faces = set()
    for face in hull.faces:
        vs = tuple(sorted(
            tuple(int(x) for x in hull.vertices[i]) for i in face.vertex_indices
        ))
        if vs and all(v in genuine_vertices for v in vs):
            faces.add(vs)
    return genuine_vertices, faces


def verify_cone(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> list[OracleCheck]:
    """Replay the kernel's three load-bearing computations by brute force."""
    checks: list[OracleCheck] = []
    kernel = hilbert_elements(cone, limits)
    brute = brute_force_hilbert(cone, limits)
    checks.append(OracleCheck(
        "hilbert-vs-bounded-enumeration", kernel == brute,
        "" if kernel == brute else f"kernel {kernel} brute {brute}"))

    if cone.sdim > 0:
        gamma = gamma_plus(cone, limits)
        model_vertices = {tuple(int(x) for x in v) for v in gamma.polyhedron.vertices}
        model_faces = {
            tuple(sorted(
                tuple(int(x) for x in gamma.polyhedron.vertices[i])
                for i in f.vertex_indices
            ))
            for f in gamma.compact_faces
        }
        brute_vertices, brute_faces = _bounded_hull_compact_faces(cone, limits)
        checks.append(OracleCheck(
            "semigroup-hull-vertices", model_vertices == brute_vertices,
            "" if model_vertices == brute_vertices
            else f"model {sorted(model_vertices)} brute {sorted(brute_vertices)}"))
        checks.append(OracleCheck(
            "semigroup-hull-compact-faces", model_faces == brute_faces,
            "" if model_faces == brute_faces
            else f"model {sorted(model_faces)} brute {sorted(brute_faces)}"))

    if cone.is_fulldim and cone.is_pointed:
        dd = cone.dual().dual()
        checks.append(OracleCheck(
            "dual-involution", dd == cone,
            "" if dd == cone else f"double dual {dd.rays} original {cone.rays}"))
    return checks


# ---------------------------------------------------------------------------
# random 2D batch

def _cross(a: Vec, b: Vec) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _rotational_order(cone: Cone, basis) -> list[Vec]:
    first = cone.rays[0]

    def cmp(a, b):
        return -1 if _cross(a, b) > 0 else (1 if _cross(a, b) < 0 else 0)

    ordered = sorted(basis, key=cmp_to_key(cmp))
    if _cross(first, ordered[0]) != 0:
        ordered.reverse()
    if _cross(first, ordered[0]) != 0:
        raise AssertionError("Hilbert basis does not start at an extreme ray")
    return ordered


def random_pointed_cone_2d(rng: random.Random, max_entry: int = 50) -> Cone:
    while True:
        a = (rng.randint(-max_entry, max_entry), rng.randint(-max_entry, max_entry))
        b = (rng.randint(-max_entry, max_entry), rng.randint(-max_entry, max_entry))
        if _cross(a, b) == 0:
            continue
        return Cone([a, b])


def verify_random_2d(count: int, seed: int, limits: Limits = DEFAULT_LIMITS,
                     max_entry: int = 50) -> list[OracleCheck]:
    rng = random.Random(seed)
    failures: list[OracleCheck] = []
    for k in range(count):
        cone = random_pointed_cone_2d(rng, max_entry)
        tag = f"#{k} rays {cone.rays}"
        rep = is_g_stable(cone, limits)
        if not rep.is_g_stable:
            failures.append(OracleCheck("planar-g-stability", False, tag))
        basis = hilbert_elements(cone, limits)
        ordered = _rotational_order(cone, basis)
        bad = [
            (u, v) for u, v in zip(ordered, ordered[1:]) if abs(_cross(u, v)) != 1
        ]
        if bad:
            failures.append(OracleCheck(
                "consecutive-unimodularity", False, f"{tag}: pairs {bad}"))
        cmpres = compare_characteristics(cone, limits=limits)
        if not cmpres.equal_for_all:
            failures.append(OracleCheck(
                "characteristic-agreement", False,
                f"{tag}: disagreements {cmpres.disagreements}"))
    if not failures:
        return [OracleCheck(f"random-2d-batch-of-{count}", True, f"seed {seed}")]
    return failures
