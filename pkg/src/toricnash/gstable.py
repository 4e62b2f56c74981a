"""G-stability of pointed cones: the semigroup hull Γ₊ and both conditions.

A pointed cone σ with Hilbert basis G is *G-stable* when

  (i)  G equals the lattice points on the compact boundary Γ(σ) of
       Γ₊(σ) = Conv(semigroup ∖ 0), and
  (ii) for every subset A ⊆ G, the Hilbert basis of Cone(A) is exactly
       G ∩ Cone(A).

Γ₊ is computed by the finite model Conv(G) + σ; the bounded-enumeration
oracle validating that model lives in the test suite. Subset checking
deduplicates by generated cone, which is lossless because both sides of
(ii) depend only on Cone(A); in dimension two every generated subcone is
already spanned by two basis elements, so pairs exhaust the condition and
no cap is needed there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone, primitive_rational
from .errors import KernelInvariantError, ResourceCapExceeded
from .hilbert import _walk_2d, hilbert_elements
from .intlinalg import Vec, dot, solve_rational
from .polyhedra import FaceDescriptor, RationalPolyhedron


@dataclass(frozen=True)
class GammaData:
    """Γ₊(σ) with its compact boundary extracted."""

    cone: Cone
    polyhedron: RationalPolyhedron
    compact_faces: tuple[FaceDescriptor, ...]
    lattice_points: tuple[Vec, ...]  # Γ(σ) ∩ N


@dataclass(frozen=True)
class ConditionIReport:
    holds: bool
    basis_not_on_gamma: tuple[Vec, ...]
    gamma_not_in_basis: tuple[Vec, ...]


@dataclass(frozen=True)
class ConditionIIReport:
    holds: bool
    witness_subset: tuple[Vec, ...] | None
    witness_element: Vec | None


@dataclass(frozen=True)
class GStabilityReport:
    condition_i: ConditionIReport
    condition_ii: ConditionIIReport

    @property
    def is_g_stable(self) -> bool:
        return self.condition_i.holds and self.condition_ii.holds


@dataclass(frozen=True)
class SupportingForm:
    """Primitive γ₀ and ℓ₀ > 0 with <ray, γ₀> = ℓ₀ and <h, γ₀> <= ℓ₀ on G."""

    gamma0: Vec
    ell0: int


def gamma_plus(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> GammaData:
    """Conv(G(σ)) + σ together with its compact faces and their lattice points."""
    if not cone.is_pointed:
        raise ValueError("Γ₊ requires a pointed cone")
    basis = hilbert_elements(cone, limits)
    if not basis:
        raise ValueError("Γ₊ is undefined for the zero cone")
    poly = RationalPolyhedron(basis, cone)
    basis_set = set(basis)
    for v in poly.vertices:
        iv = tuple(int(x) for x in v)
        if any(x.denominator != 1 for x in v) or iv not in basis_set:
            raise KernelInvariantError(f"Γ₊ vertex {v} is not a Hilbert basis element")
    compact = poly.compact_faces()
    pts: set[Vec] = set()
    for face in compact:
        pts.update(poly.face_lattice_points(face))
    return GammaData(cone, poly, compact, tuple(sorted(pts)))


def check_condition_i(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> ConditionIReport:
    basis = set(hilbert_elements(cone, limits))
    gamma = set(gamma_plus(cone, limits).lattice_points)
    return ConditionIReport(
        holds=basis == gamma,
        basis_not_on_gamma=tuple(sorted(basis - gamma)),
        gamma_not_in_basis=tuple(sorted(gamma - basis)),
    )


def check_condition_ii(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> ConditionIIReport:
    """First violating subset (in (size, lex) order, one per generated cone)."""
    if not cone.is_pointed:
        raise ValueError("condition (ii) requires a pointed cone")
    basis = sorted(hilbert_elements(cone, limits))
    if cone.sdim <= 1:
        return ConditionIIReport(True, None, None)
    if cone.sdim == 2:
        # every generated subcone is spanned by two basis elements, and the
        # whole scan runs on planar coordinates without building subcones
        return _condition_ii_planar(cone, basis)
    if len(basis) > limits.subset_scan_basis:
        raise ResourceCapExceeded(
            f"condition (ii) scan over {len(basis)} basis elements "
            f"(cap {limits.subset_scan_basis})"
        )
    max_size = len(basis)

    tested = set()
    for size in range(1, max_size + 1):
        for subset in combinations(basis, size):
            sub = Cone(subset, cone.dim)
            key = sub._key()
            if key in tested:
                continue
            tested.add(key)
            have = hilbert_elements(sub, limits)
            want = tuple(sorted(g for g in basis if sub.contains(g)))
            if have == want:
                continue
            extra = [x for x in have if x not in set(want)]
            if not extra:
                raise KernelInvariantError(
                    "G(σ) ∩ σ_A escaped G(σ_A); restriction monotonicity broken"
                )
            return ConditionIIReport(False, subset, extra[0])
    return ConditionIIReport(True, None, None)


def _condition_ii_planar(cone: Cone, basis: list[Vec]) -> ConditionIIReport:
    """The pair scan of a planar cone, on span-lattice coordinates.

    A subcone spanned by two basis elements is a wedge; the basis elements it
    contains form a contiguous run of the angular order, and its own Hilbert
    basis comes from the boundary walk. Pairs are visited in the same
    lexicographic order as the generic subset scan, so any violation report
    is identical.
    """
    span = cone.span
    coords = {g: tuple(span.coords(g)) for g in basis}
    ordered = sorted(
        coords.values(),
        key=cmp_to_key(lambda x, y: -1 if x[0] * y[1] - x[1] * y[0] > 0 else 1),
    )
    pos = {c: k for k, c in enumerate(ordered)}
    for pair in combinations(basis, 2):
        i, j = sorted(pos[coords[g]] for g in pair)
        have2 = _walk_2d(ordered[i], ordered[j])
        want2 = ordered[i : j + 1]
        if sorted(have2) == sorted(want2):
            continue
        extra2 = set(have2) - set(want2)
        if not extra2:
            raise KernelInvariantError(
                "G(σ) ∩ σ_A escaped G(σ_A); restriction monotonicity broken"
            )
        extra = sorted(tuple(span.lift(p)) for p in extra2)
        return ConditionIIReport(False, pair, extra[0])
    return ConditionIIReport(True, None, None)


def is_g_stable(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> GStabilityReport:
    return GStabilityReport(
        condition_i=check_condition_i(cone, limits),
        condition_ii=check_condition_ii(cone, limits),
    )


def supporting_form(cone: Cone, limits: Limits = DEFAULT_LIMITS) -> SupportingForm:
    """The affine support of Γ(σ) for a simplicial full-dimensional cone.

    Solves <r, γ> = 1 on the rays, clears denominators, and then asserts the
    one-sided bound <h, γ₀> <= ℓ₀ on the whole Hilbert basis — a failure
    there means the cone was not G-stable after all.
    """
    if not (cone.is_simplicial and cone.is_fulldim):
        raise ValueError("supporting forms require a simplicial full-dimensional cone")
    sol = solve_rational(cone.rays, (1,) * len(cone.rays))
    assert sol is not None
    gamma0 = primitive_rational(sol)
    values = {dot(r, gamma0) for r in cone.rays}
    if len(values) != 1:
        raise KernelInvariantError("rays fell off the common support hyperplane")
    ell0 = values.pop()
    if ell0 <= 0:
        raise KernelInvariantError("support level must be positive")
    for h in hilbert_elements(cone, limits):
        if dot(h, gamma0) > ell0:
            raise KernelInvariantError(
                f"Hilbert element {h} lies above the support hyperplane; "
                "input cone is not G-stable"
            )
    return SupportingForm(gamma0, ell0)


@dataclass(frozen=True)
class FanGStabilityReport:
    is_g_stable: bool
    failures: tuple[tuple[tuple[Vec, ...], GStabilityReport], ...]  # (rays, report)


def is_g_stable_fan(fan, limits: Limits = DEFAULT_LIMITS) -> FanGStabilityReport:
    """Check every cone of the fan (not only the maximal ones).

    Face verdicts are cross-checked against the heredity principle — a face
    of a G-stable cone must be G-stable — and an inconsistency raises, since
    it would mean the kernel contradicted itself.
    """
    verdicts: dict[Cone, GStabilityReport | None] = {}
    for c in fan.all_cones():
        if c.sdim == 0:
            verdicts[c] = None  # the origin is vacuously stable
            continue
        verdicts[c] = is_g_stable(c, limits)
    for c, rep in verdicts.items():
        if rep is not None and not rep.is_g_stable:
            continue
        for face in c.faces():
            frep = verdicts.get(face)
            if frep is not None and not frep.is_g_stable:
                raise KernelInvariantError(
                    "a face of a G-stable cone reported non-G-stable: "
                    f"{face.rays} inside {c.rays}"
                )
    failures = tuple(
        (c.rays, rep)
        for c, rep in sorted(verdicts.items(), key=lambda kv: (kv[0].sdim, kv[0].rays))
        if rep is not None and not rep.is_g_stable
    )
    return FanGStabilityReport(is_g_stable=not failures, failures=failures)
