"""Normalized Nash blowups of affine toric varieties, over any characteristic.

For a pointed full-dimensional cone σ the logarithmic Jacobian points in
characteristic p are the sums h₁+⋯+h_d of d-element subsets of the dual
Hilbert basis whose determinant survives reduction mod p. Their convex hull
plus σ∨ is the Newton polyhedron N_p(σ); the normal fan of N_p(σ) is the
fan of the normalized Nash blowup, and the blowup is smooth exactly when
every maximal cone of that fan is regular.

"All primes" questions reduce to the finite set of primes dividing some
subset determinant: away from those, a determinant vanishes mod p iff it
vanishes over Z, so nothing changes. :func:`compare_characteristics` walks
exactly that finite set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from sympy import factorint, isprime

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone
from .errors import KernelInvariantError, ResourceCapExceeded
from .fans import Fan, normal_fan
from .hilbert import hilbert_elements
from .intlinalg import QVec, Vec, det, vadd
from .polyhedra import RationalPolyhedron, minkowski_polyhedron


# ---------------------------------------------------------------------------
# logarithmic Jacobian points

@dataclass(frozen=True)
class LogJacobianSet:
    """J_p(σ): sums of dual-basis d-subsets with det ≢ 0 (mod p)."""

    char: int
    points: tuple[Vec, ...]
    # point -> (witnessing subset in lex order, its integer determinant)
    witnesses: dict[Vec, tuple[tuple[Vec, ...], int]] = field(repr=False)


def _require_affine_chart(sigma: Cone) -> None:
    if not sigma.is_fulldim:
        raise ValueError("Nash blowup input must be a full-dimensional cone")
    if not sigma.is_pointed:
        raise ValueError("Nash blowup input must be a pointed cone")


def _require_characteristic(p: int) -> None:
    if p != 0 and not isprime(p):
        raise ValueError(f"characteristic must be 0 or a prime, got {p}")


def _dual_basis_subsets(sigma: Cone, limits: Limits):
    """Yield (subset, det) over all d-subsets of G(σ∨), in lex order.

    Only |det| matters downstream (nonvanishing mod p, prime divisors), so
    subsets rather than ordered tuples suffice.
    """
    basis = sorted(hilbert_elements(sigma.dual(), limits))
    d = sigma.dim
    total = comb(len(basis), d)
    if total > limits.log_jacobian_tuples:
        raise ResourceCapExceeded(
            f"{total} dual-basis {d}-subsets exceed the cap of "
            f"{limits.log_jacobian_tuples}"
        )
    for subset in combinations(basis, d):
        yield subset, det(subset)


def log_jacobian_points(
    sigma: Cone, p: int = 0, limits: Limits = DEFAULT_LIMITS
) -> LogJacobianSet:
    _require_affine_chart(sigma)
    _require_characteristic(p)
    witnesses: dict[Vec, tuple[tuple[Vec, ...], int]] = {}
    for subset, d_val in _dual_basis_subsets(sigma, limits):
        if d_val == 0 or (p != 0 and d_val % p == 0):
            continue
        point = subset[0]
        for h in subset[1:]:
            point = vadd(point, h)
        witnesses.setdefault(point, (subset, d_val))
    return LogJacobianSet(p, tuple(sorted(witnesses)), witnesses)


def relevant_primes(sigma: Cone, limits: Limits = DEFAULT_LIMITS) -> tuple[int, ...]:
    """Primes dividing some nonzero dual-basis d-subset determinant.

    For every other prime p reduction mod p kills no determinant, hence
    J_p = J_0 and N_p = N_0 with nothing to compare.
    """
    _require_affine_chart(sigma)
    primes: set[int] = set()
    for _, d_val in _dual_basis_subsets(sigma, limits):
        if d_val != 0 and abs(d_val) != 1:
            primes.update(factorint(abs(d_val)))
    return tuple(sorted(primes))


# ---------------------------------------------------------------------------
# Newton polyhedra and the blowup fan

def newton_polyhedron(
    sigma: Cone, p: int = 0, limits: Limits = DEFAULT_LIMITS
) -> RationalPolyhedron:
    """N_p(σ) = Conv(J_p(σ)) + σ∨."""
    points = log_jacobian_points(sigma, p, limits).points
    return minkowski_polyhedron(points, sigma.dual())


@dataclass(frozen=True)
class NashResult:
    """One normalized Nash blowup X(fan) → X(sigma)."""

    sigma: Cone
    char: int
    newton: RationalPolyhedron
    fan: Fan
    smooth: bool
    # Newton vertices whose chart cone (dual of the feasible cone, a maximal
    # cone of ``fan`` in σ's own lattice) is not regular.
    singular_charts: tuple[tuple[QVec, Cone], ...]


def nash_blowup_fan(
    sigma: Cone, p: int = 0, limits: Limits = DEFAULT_LIMITS
) -> NashResult:
    newton = newton_polyhedron(sigma, p, limits)
    fan = normal_fan(newton)
    singular = tuple(
        (v, chart)
        for v in newton.vertices
        for chart in (newton.feasible_cone(v).dual(),)
        if not chart.is_regular
    )
    return NashResult(sigma, p, newton, fan, not singular, singular)


# ---------------------------------------------------------------------------
# iteration

@dataclass(frozen=True)
class NashTree:
    """Iterated blowups: one node per chart, children for its singular charts.

    ``result`` is ``None`` exactly when the depth cap stopped the iteration
    at a still-singular chart, so ``cap_hit`` and ``resolved`` cannot both
    hold and a resolved tree certifies smoothness of every leaf.
    """

    sigma: Cone
    result: NashResult | None
    children: tuple["NashTree", ...] = ()

    @property
    def cap_hit(self) -> bool:
        return self.result is None or any(c.cap_hit for c in self.children)

    @property
    def resolved(self) -> bool:
        return (
            self.result is not None
            and (self.result.smooth or bool(self.children))
            and all(c.resolved for c in self.children)
        )

    @property
    def depth(self) -> int:
        """Blowup applications along the deepest branch (0 for a regular σ)."""
        if self.result is None or self.sigma.is_regular:
            return 0
        return 1 + max((c.depth for c in self.children), default=0)


def nash_iterate(
    sigma: Cone,
    p: int = 0,
    max_depth: int = 5,
    limits: Limits = DEFAULT_LIMITS,
) -> NashTree:
    """Blow up repeatedly, descending into every singular chart.

    Charts stay in σ's ambient lattice — the maximal cones of each normal
    fan are reused as-is — so recurring cones are comparable across levels.
    """
    _require_affine_chart(sigma)
    _require_characteristic(p)
    if max_depth < 0:
        raise ValueError("max_depth must be nonnegative")
    if not sigma.is_regular and max_depth == 0:
        return NashTree(sigma, None)
    result = nash_blowup_fan(sigma, p, limits)
    children = tuple(
        nash_iterate(chart, p, max_depth - 1, limits)
        for _, chart in result.singular_charts
    )
    return NashTree(sigma, result, children)


# ---------------------------------------------------------------------------
# characteristic comparison

@dataclass(frozen=True)
class CharComparison:
    """Vertex sets of N_0 versus N_p across every relevant prime."""

    relevant_primes: tuple[int, ...]
    equal_for_all: bool
    # (prime, sorted symmetric difference of the two vertex sets)
    disagreements: tuple[tuple[int, tuple[QVec, ...]], ...]


def compare_characteristics(
    sigma: Cone, limits: Limits = DEFAULT_LIMITS
) -> CharComparison:
    primes = relevant_primes(sigma, limits)
    j0 = set(log_jacobian_points(sigma, 0, limits).points)
    v0 = set(newton_polyhedron(sigma, 0, limits).vertices)
    disagreements = []
    for p in primes:
        jp = set(log_jacobian_points(sigma, p, limits).points)
        if not jp <= j0:
            raise KernelInvariantError(
                "J_p must be a subset of J_0 — a determinant vanished over Z "
                f"but not mod {p}"
            )
        vp = set(newton_polyhedron(sigma, p, limits).vertices)
        diff = v0 ^ vp
        if diff:
            disagreements.append((p, tuple(sorted(diff))))
    return CharComparison(primes, not disagreements, tuple(disagreements))
