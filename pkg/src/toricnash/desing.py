"""G-desingularization by star subdivision, with a fully recorded trace.

The loop walks the dimensions from 2 upward. At the active dimension it
repeatedly picks a cone with the largest Hilbert basis (the measure-M
realizers) and stars the fan at a basis element that is not a ray; each
recorded step closes only once the pair (M, N) at that dimension has
strictly dropped in lexicographic order.

A step is usually a single subdivision, and in a two-dimensional fan it
always is. In higher fans, subdividing a non-maximal cone also splits the
cones above it, and the resulting joins of γ with their outer rays can be
new non-regular cones of the *same* dimension, briefly holding (M, N)
constant; the step then continues until the drop lands. Termination is
still guaranteed without any measure argument: every subdivision inserts a
ray that is a Hilbert element of the input fan and not yet a ray of the
working fan, and that pool is finite. For G-stable inputs the result is a
regular refinement whose rays are exactly the Hilbert union of the input;
for anything else the specific way the loop fails is reported, never
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_LIMITS, Limits
from .cones import Cone
from .errors import KernelInvariantError, ResourceCapExceeded
from .fans import (
    Fan,
    fan_from_cone,
    fan_hilbert_union,
    is_refinement,
    measure_M,
    measure_N,
    simplicialize,
    star_subdivision,
)
from .gstable import is_g_stable_fan
from .hilbert import grading_functional, hilbert_elements
from .intlinalg import Vec, dot, solve_rational


class DesingularizationError(RuntimeError):
    """The subdivision loop could not reach a G-desingularization.

    ``reason`` is one of ``input-not-g-stable``, ``ray-outside-hilbert-union``
    or ``measure-did-not-decrease`` — the distinct ways a non-G-stable input
    breaks the termination argument. The last one means the finite pool of
    candidate rays ran dry while (M, N) was still stuck at its step-entry
    value, which cannot happen when every cone of the fan is G-stable.
    """

    def __init__(self, reason: str, detail: str):
        super().__init__(f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail


@dataclass(frozen=True)
class DesingStep:
    """One strict drop of (M, N) at ``dimension``.

    ``gamma`` is the ray inserted into ``cone_rays``; ``extra_gammas`` lists
    the follow-up insertions (usually none) that were needed before the drop
    registered, in order.
    """

    dimension: int
    cone_rays: tuple[Vec, ...]
    gamma: Vec
    measures_before: tuple[int, int]
    measures_after: tuple[int, int]
    extra_gammas: tuple[Vec, ...] = ()


@dataclass(frozen=True)
class DesingTrace:
    initial: Fan
    final: Fan
    steps: tuple[DesingStep, ...]


def g_desingularize(
    fan: Fan, check_g_stable: bool = True, limits: Limits = DEFAULT_LIMITS
) -> tuple[Fan, DesingTrace]:
    if check_g_stable:
        report = is_g_stable_fan(fan, limits)
        if not report.is_g_stable:
            bad = ", ".join(str(list(rays)) for rays, _ in report.failures)
            raise DesingularizationError(
                "input-not-g-stable", f"non-G-stable cones: {bad}"
            )

    allowed_rays = set(fan_hilbert_union(fan, limits))
    work = simplicialize(fan)
    steps: list[DesingStep] = []
    subdivisions = 0
    for i in range(2, work.maxdim + 1):
        while any(not c.is_regular for c in work.cones_of_dim(i)):
            before = (measure_M(work, i, limits), measure_N(work, i, limits))
            gammas: list[Vec] = []
            first_target: tuple[Vec, ...] | None = None
            after = before
            while not after < before:
                if subdivisions >= limits.desing_steps:
                    raise ResourceCapExceeded(
                        f"desingularization exceeded {limits.desing_steps} subdivision steps"
                    )
                level = work.cones_of_dim(i)
                peak = max(len(hilbert_elements(c, limits)) for c in level)
                target = min(
                    (c for c in level if len(hilbert_elements(c, limits)) == peak),
                    key=lambda c: c.rays,
                )
                grading = grading_functional(target)
                ray_set = set(target.rays)
                gamma = min(
                    (h for h in hilbert_elements(target, limits) if h not in ray_set),
                    key=lambda h: (dot(grading, h), h),
                )
                if gamma not in allowed_rays:
                    raise DesingularizationError(
                        "ray-outside-hilbert-union",
                        f"chosen {gamma} is not a Hilbert element of the input fan",
                    )
                if gamma in set(work.rays):
                    # Subdividing at an existing ray changes nothing, so the
                    # measure can never come down: the pool is exhausted.
                    raise DesingularizationError(
                        "measure-did-not-decrease",
                        f"dimension {i}: stuck at {before} with γ={gamma} already a ray",
                    )
                work = star_subdivision(work, gamma)
                subdivisions += 1
                for j in range(2, i):
                    if any(not c.is_regular for c in work.cones_of_dim(j)):
                        raise KernelInvariantError(
                            f"regular {j}-skeleton damaged by a dimension-{i} subdivision"
                        )
                gammas.append(gamma)
                if first_target is None:
                    first_target = target.rays
                after = (measure_M(work, i, limits), measure_N(work, i, limits))
            assert first_target is not None
            steps.append(
                DesingStep(i, first_target, gammas[0], before, after, tuple(gammas[1:]))
            )

    for c in work.all_cones():
        if not c.is_regular:
            raise KernelInvariantError("desingularization finished with a singular cone")
    return work, DesingTrace(fan, work, tuple(steps))


def is_moderate_resolution(resolution: Fan, cone: Cone) -> bool:
    """Do the ray-generator hyperplanes of the pieces meet every original ray?

    For each maximal piece τ, the affine hyperplane through the primitive
    ray generators of τ is solved exactly; the answer is whether every ray
    of the original cone crosses it at a positive parameter. The resolution
    must be a regular refinement of the cone's face fan.
    """
    base = fan_from_cone(cone)
    if not is_refinement(resolution, base):
        raise ValueError("not a refinement of the cone")
    if any(not m.is_regular for m in resolution.maximal_cones):
        raise ValueError("not a regular refinement")
    for tau in resolution.maximal_cones:
        level = solve_rational(tau.rays, (1,) * len(tau.rays))
        if level is None:
            raise KernelInvariantError("independent rays admit no support hyperplane")
        for r in cone.rays:
            if dot(r, level) <= 0:
                return False
    return True
