"""Hilbert bases: the minimal generating set of the semigroup cone ∩ Z^d.

The cone is triangulated on its rays, the half-open fundamental
parallelepiped of each simplicial piece is enumerated through Smith-form
coset representatives, and the candidate pool is then reduced in increasing
order of a strictly positive grading. Two-dimensional cones take a separate
route: their basis is exactly the lattice points on the compact boundary of
Conv(σ ∩ Z² ∖ 0), walked directly in linear time, which matters because the
planar stability scan solves thousands of small subcones. The deliberately
naive cross-check (bounded enumeration plus an irreducibility sieve, sharing
no code with either route) lives in :mod:`toricnash.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iterproduct


from .config import DEFAULT_LIMITS, Limits
from .cones import Cone, triangulate_cone
from .errors import ResourceCapExceeded
from .intlinalg import (
    Vec,
    det,
    dot,
    is_zero,
    mat_vec,
    smith_normal_form,
    solve_rational,
    transpose,
    unimodular_inverse,
    vadd,
    vsub,
)

_CACHE: dict[tuple, tuple[Vec, ...]] = {}


@dataclass(frozen=True)
class HilbertBasis:
    cone: Cone
    elements: tuple[Vec, ...]
    grading: Vec


def grading_functional(cone: Cone) -> Vec:
    """Integer functional strictly positive on cone ∖ {0}.

    The sum of the facet normals works: it is nonnegative on the cone, and a
    point where it vanishes lies on every facet, hence is the origin.
    """
    if not cone.is_pointed:
        raise ValueError("grading functionals exist only for pointed cones")
    g: tuple = (0,) * cone.dim
    for f in cone.facets:
        g = vadd(g, f)
    return g


def hilbert_elements(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> tuple[Vec, ...]:
    """The Hilbert basis of a pointed cone, sorted, memoized per ray set."""
    if not cone.is_pointed:
        raise ValueError("Hilbert bases exist only for pointed cones")
    key = (cone.dim, cone.rays)
    if key in _CACHE:
        return _CACHE[key]
    if cone.sdim == 0:
        result: tuple[Vec, ...] = ()
        _CACHE[key] = result
        return result
    if cone.sdim == 2:
        result = _staircase_2d(cone, limits)
        _CACHE[key] = result
        return result

    candidates = set(cone.rays)
    budget = limits.parallelepiped_points
    for simplex in triangulate_cone(cone):
        pts, budget = _parallelepiped_points(cone, simplex, budget, limits)
        candidates.update(pts)

    grading = grading_functional(cone)
    facets = cone.facets
    kept: list[Vec] = []
    for x in sorted(candidates, key=lambda v: (dot(grading, v), v)):
        # differences of semigroup elements stay in the span, so membership
        # of x - y reduces to the facet inequalities
        for y in kept:
            d = vsub(x, y)
            if not is_zero(d) and all(dot(f, d) >= 0 for f in facets):
                break
        else:
            kept.append(x)
    result = tuple(sorted(kept))
    _CACHE[key] = result
    return result


def hilbert_basis(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> HilbertBasis:
    return HilbertBasis(cone, hilbert_elements(cone, limits), grading_functional(cone))


def _unimodular_partner(c: tuple[int, int]) -> tuple[int, int]:
    """Some w with det(c, w) = 1, for primitive c: a Bézout certificate."""
    a, b = c
    if b == 0:
        return (0, a)  # a = ±1, det = a·a = 1
    p = pow(a, -1, abs(b)) if abs(b) > 1 else 0
    # a·p + b·q = 1 with integral q because a·p ≡ 1 (mod b)
    q = (1 - a * p) // b
    return (-q, p)


def _walk_2d(u: tuple[int, int], v: tuple[int, int]) -> list[tuple[int, int]]:
    """Boundary lattice points of Cone(u, v) from u to v, for det(u, v) > 0.

    Consecutive boundary lattice points span unimodularly, so from the
    current point c the next one is the least element of the line
    {w : det(c, w) = 1} that has entered the wedge toward v — any later
    element of the line differs from it by a multiple of c and is therefore
    reducible. Each move strictly drops det(·, v), so the walk ends at v
    having visited the whole Hilbert basis in angular order.
    """
    out = [u]
    cur = u
    while True:
        d = cur[0] * v[1] - cur[1] * v[0]
        if d == 1:
            break
        w0 = _unimodular_partner(cur)  # det(cur, w0) = 1
        dv0 = w0[0] * v[1] - w0[1] * v[0]
        t = -(dv0 // d)  # least t with det(w0 + t·cur, v) >= 0
        cur = (w0[0] + t * cur[0], w0[1] + t * cur[1])
        out.append(cur)
    out.append(v)
    return out


def _staircase_2d(cone: Cone, limits: Limits) -> tuple[Vec, ...]:
    """Hilbert basis of a planar cone: the walk, in span-lattice coordinates."""
    span = cone.span
    u, v = (tuple(span.coords(r)) for r in cone.rays)
    if u[0] * v[1] - u[1] * v[0] < 0:
        u, v = v, u
    if u[0] * v[1] - u[1] * v[0] > limits.parallelepiped_points:
        # same budget the parallelepiped route charges for this cone
        raise ResourceCapExceeded(
            f"fundamental parallelepipeds exceed {limits.parallelepiped_points} lattice points"
        )
    return tuple(sorted(tuple(span.lift(p)) for p in _walk_2d(u, v)))


def _parallelepiped_points(cone: Cone, simplex, budget: int, limits: Limits):
    """Nonzero lattice points of {sum t_i r_i : 0 <= t_i < 1}, in ambient coords.

    Works in coordinates on the saturated span lattice, where the simplex
    matrix M is square and invertible: coset representatives of Z^s / M Z^s
    come from the Smith form, and each representative is folded into the
    half-open box by subtracting M * floor(M^{-1} x). The fold runs on the
    integer adjugate — floor(adj(M) x / det M) entrywise — keeping the inner
    loop free of rational arithmetic.
    """
    span = cone.span
    m = transpose([span.coords(r) for r in simplex])
    n = len(simplex)
    d_signed = det(m)
    volume = abs(d_signed)
    if volume > budget:
        raise ResourceCapExceeded(
            f"fundamental parallelepipeds exceed {limits.parallelepiped_points} lattice points"
        )
    budget -= volume
    if volume == 1:
        return (), budget

    s, u, _ = smith_normal_form(m)
    divisors = [s[i][i] for i in range(n)]
    uinv = unimodular_inverse(u)
    adj_cols = []
    for j in range(n):
        e = tuple(1 if k == j else 0 for k in range(n))
        col = solve_rational(m, e)
        assert col is not None
        scaled = [c * d_signed for c in col]
        if any(f.denominator != 1 for f in scaled):
            raise AssertionError("adjugate of an integer matrix must be integral")
        adj_cols.append(tuple(int(f) for f in scaled))
    adj = transpose(adj_cols)
    out = []
    for a in iterproduct(*[range(d) for d in divisors]):
        x = mat_vec(uinv, a)
        num = mat_vec(adj, x)
        shift = tuple(c // d_signed for c in num)
        p = vsub(x, mat_vec(m, shift))
        if not is_zero(p):
            out.append(tuple(span.lift(p)))
    return out, budget
