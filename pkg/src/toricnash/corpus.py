"""Bundled worked examples with pinned expected outputs.

Each entry pairs an input file under ``data/corpus/`` (plain cone / polytope
JSON, reusable as input to any CLI verb) with a check function that re-derives
the example from scratch and compares against values frozen here. The checks
are the repository's regression anchor: a mismatch means the kernel now
disagrees with a hand-verified computation, which is treated as an internal
error (exit code 4 on the command line), never silently accepted.

Entries can also be run from an explicit path, in which case the file contents
are re-derived under the same expectations — tampering with an input shows up
as a mismatch rather than a crash.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from .config import DEFAULT_LIMITS, Limits
from .desing import g_desingularize, is_moderate_resolution
from .fans import fan_from_cone, fan_hilbert_union
from .gstable import is_g_stable, supporting_form
from .hilbert import hilbert_elements
from .jsonio import load_geometry
from .nash import (
    compare_characteristics,
    log_jacobian_points,
    nash_blowup_fan,
    relevant_primes,
)
from .polytopes import (
    barycentric_hull,
    is_g_flat,
    is_smooth,
    omega_cone,
    one_step_resolution,
    verify_baryhull_theorem,
)


@dataclass(frozen=True)
class CheckResult:
    label: str
    passed: bool
    expected: str
    observed: str


@dataclass(frozen=True)
class EntryResult:
    name: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class _Recorder:
    def __init__(self):
        self.checks: list[CheckResult] = []

    def eq(self, label: str, observed, expected):
        self.checks.append(
            CheckResult(label, observed == expected, repr(expected), repr(observed))
        )

    def true(self, label: str, observed):
        self.eq(label, bool(observed), True)


def _frac_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


# ---------------------------------------------------------------------------
# per-entry checks (expected values fixed by hand)

def _check_an_surface(n: int, cone, rec: _Recorder, limits: Limits):
    rec.eq("hilbert-basis", hilbert_elements(cone, limits),
           tuple((1, k) for k in range(n + 1)))
    rec.true("g-stable", is_g_stable(cone, limits).is_g_stable)
    fan = fan_from_cone(cone)
    final, trace = g_desingularize(fan, limits=limits)
    rec.eq("desing-steps", len(trace.steps), n - 1)
    rec.eq("desing-rays", final.rays, fan_hilbert_union(fan, limits))
    rec.true("desing-regular", all(c.is_regular for c in final.maximal_cones))
    rec.true("desing-moderate", is_moderate_resolution(final, cone))
    rec.true("characteristic-agreement", compare_characteristics(cone, limits=limits).equal_for_all)


def _check_cond_i_failure(cone, rec: _Recorder, limits: Limits):
    rec.eq("hilbert-basis", hilbert_elements(cone, limits),
           ((0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2)))
    rep = is_g_stable(cone, limits)
    rec.eq("condition-i-holds", rep.condition_i.holds, False)
    rec.eq("condition-i-witness", rep.condition_i.basis_not_on_gamma, ((1, 1, 1),))
    rec.eq("boundary-surplus", rep.condition_i.gamma_not_in_basis, ())
    rec.eq("g-stable", rep.is_g_stable, False)


def _check_cond_ii_failure(cone, rec: _Recorder, limits: Limits):
    rec.eq("hilbert-basis", hilbert_elements(cone, limits),
           ((0, 0, -1), (0, 1, 0), (1, 0, 0), (1, 1, 2)))
    rep = is_g_stable(cone, limits)
    rec.eq("condition-i-holds", rep.condition_i.holds, True)
    rec.eq("condition-ii-holds", rep.condition_ii.holds, False)
    rec.eq("condition-ii-subset", rep.condition_ii.witness_subset,
           ((0, 1, 0), (1, 0, 0), (1, 1, 2)))
    rec.eq("condition-ii-element", rep.condition_ii.witness_element, (1, 1, 1))


def _check_nonflat_tetrahedron(poly, rec: _Recorder, limits: Limits):
    rec.eq("smooth", is_smooth(poly), False)
    rep = is_g_flat(poly, limits)
    rec.eq("g-flat", rep.is_g_flat, False)
    rec.eq("offenders", rep.offenders, ((1, 1, 1, 2),))
    rec.eq("height-cone-hilbert", hilbert_elements(omega_cone(poly), limits),
           ((0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 0, 1), (1, 1, 1, 1), (1, 1, 1, 2)))


def _check_nash_3fold(cone, rec: _Recorder, limits: Limits):
    j0 = log_jacobian_points(cone, 0, limits)
    rec.eq("char-0-points", j0.points,
           ((2, 2, 1), (3, 3, 3), (3, 4, 4), (4, 3, 4)))
    rec.eq("subset-determinants",
           tuple(sorted(abs(d) for _, d in j0.witnesses.values())), (1, 1, 1, 3))
    rec.eq("char-3-points", log_jacobian_points(cone, 3, limits).points,
           ((2, 2, 1), (3, 4, 4), (4, 3, 4)))
    rec.eq("relevant-primes", relevant_primes(cone, limits), (3,))
    res = nash_blowup_fan(cone, 0, limits)
    rec.eq("newton-vertices", tuple(sorted(res.newton.vertices)),
           (_frac_vec((2, 2, 1)), _frac_vec((3, 4, 4)), _frac_vec((4, 3, 4))))
    rec.eq("centroid-not-vertex",
           _frac_vec((3, 3, 3)) in res.newton.vertices, False)
    rec.eq("smooth", res.smooth, False)
    rec.eq("singular-chart-count", len(res.singular_charts), 3)
    chart = {tuple(v): c for v, c in res.singular_charts}[_frac_vec((2, 2, 1))]
    rec.eq("chart-dual-rays", chart.dual().rays,
           ((0, 1, 0), (1, 0, 0), (1, 2, 3), (2, 1, 3)))
    rec.eq("chart-regular", chart.is_regular, False)
    dual_basis = hilbert_elements(chart.dual(), limits)
    rec.eq("chart-dual-hilbert", dual_basis,
           ((0, 1, 0), (1, 0, 0), (1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 1, 3)))
    chart_rep = is_g_stable(chart.dual(), limits)
    rec.eq("chart-dual-condition-i", chart_rep.condition_i.holds, False)
    rec.eq("chart-dual-condition-i-witness",
           chart_rep.condition_i.basis_not_on_gamma, ((1, 1, 1),))
    rec.true("characteristic-agreement",
             compare_characteristics(cone, limits=limits).equal_for_all)
    final, trace = g_desingularize(fan_from_cone(cone), limits=limits)
    rec.eq("desing-step-gammas",
           tuple((s.gamma, s.extra_gammas) for s in trace.steps),
           (((0, 1, 0), ()), ((1, 0, 0), ()), ((1, 2, -2), ()),
            ((0, 2, -1), ()), ((2, 0, -1), ()), ((2, 1, -2), ((1, 1, -1),))))
    rec.eq("desing-measures",
           tuple((s.measures_before, s.measures_after) for s in trace.steps),
           (((2, 3), (2, 2)), ((2, 2), (2, 1)), ((2, 1), (1, 3)),
            ((1, 3), (1, 2)), ((1, 2), (1, 1)), ((1, 1), (0, 0))))
    rec.eq("desing-rays", final.rays,
           fan_hilbert_union(fan_from_cone(cone), limits))
    rec.true("desing-moderate", is_moderate_resolution(final, cone))


def _check_nash_3fold_dual(cone, rec: _Recorder, limits: Limits):
    rec.eq("hilbert-basis", hilbert_elements(cone, limits),
           ((0, 1, 0), (1, 0, 0), (1, 1, 1), (2, 2, 3)))
    rec.true("g-stable", is_g_stable(cone, limits).is_g_stable)
    form = supporting_form(cone, limits)
    rec.eq("support-form", (form.gamma0, form.ell0), ((1, 1, -1), 1))
    fan = fan_from_cone(cone)
    final, trace = g_desingularize(fan, limits=limits)
    rec.eq("desing-steps", [(s.gamma, s.measures_before, s.measures_after)
                            for s in trace.steps], [((1, 1, 1), (1, 1), (0, 0))])
    rec.eq("desing-rays", final.rays, ((0, 1, 0), (1, 0, 0), (1, 1, 1), (2, 2, 3)))
    rec.true("desing-moderate", is_moderate_resolution(final, cone))


def _check_thin_triangle(n: int, poly, rec: _Recorder, limits: Limits):
    rec.eq("smooth", is_smooth(poly), False)
    rec.true("g-flat", is_g_flat(poly, limits).is_g_flat)
    rec.true("height-cone-g-stable", is_g_stable(omega_cone(poly), limits).is_g_stable)
    osr = one_step_resolution(poly, limits)
    expected_chars = {2: (0, 2), 3: (0, 2, 3), 5: (0, 2, 3, 5)}[n]
    rec.eq("characteristics", osr.characteristics, expected_chars)
    rec.eq("resolved", osr.resolved, True)
    rec.eq("characteristic-independent", osr.characteristic_independent, True)
    sigma = omega_cone(poly).dual()
    verts = tuple(sorted(nash_blowup_fan(sigma, 0, limits).newton.vertices))
    rec.eq("newton-vertices", verts,
           (_frac_vec((1, 1, 3)), _frac_vec((2 * n - 1, 1, 3))))
    final, trace = g_desingularize(fan_from_cone(omega_cone(poly)), limits=limits)
    rec.eq("desing-rays", final.rays, fan_hilbert_union(fan_from_cone(omega_cone(poly)), limits))
    rec.true("desing-moderate", is_moderate_resolution(final, omega_cone(poly)))


def _check_unit_square(poly, rec: _Recorder, limits: Limits):
    rec.true("smooth", is_smooth(poly))
    rec.true("g-flat", is_g_flat(poly, limits).is_g_flat)
    rec.true("height-cone-g-stable", is_g_stable(omega_cone(poly), limits).is_g_stable)
    bh = barycentric_hull(poly, limits)
    rec.eq("simplex-count", bh.simplex_count, 4)
    rec.eq("hull-vertices", tuple(sorted(bh.hull_vertices)), tuple(
        _frac_vec(v) for v in
        [(Fraction(1, 3), Fraction(1, 3)), (Fraction(1, 3), Fraction(2, 3)),
         (Fraction(2, 3), Fraction(1, 3)), (Fraction(2, 3), Fraction(2, 3))]))
    rec.true("baryhull-theorem", verify_baryhull_theorem(poly, limits).passed)
    osr = one_step_resolution(poly, limits)
    rec.eq("characteristics", osr.characteristics, (0,))
    rec.true("resolved", osr.resolved)
    rec.true("characteristic-independent", osr.characteristic_independent)
    sigma = omega_cone(poly).dual()
    rec.eq("newton-vertices", tuple(sorted(nash_blowup_fan(sigma, 0, limits).newton.vertices)),
           (_frac_vec((1, 1, 3)), _frac_vec((1, 2, 3)),
            _frac_vec((2, 1, 3)), _frac_vec((2, 2, 3))))
    final, _ = g_desingularize(fan_from_cone(omega_cone(poly)), limits=limits)
    rec.true("desing-moderate", is_moderate_resolution(final, omega_cone(poly)))


def _check_unit_cube(poly, rec: _Recorder, limits: Limits):
    rec.true("smooth", is_smooth(poly))
    rec.true("g-flat", is_g_flat(poly, limits).is_g_flat)
    rep = is_g_stable(omega_cone(poly), limits)
    rec.eq("height-cone-g-stable", rep.is_g_stable, False)
    rec.eq("condition-i-holds", rep.condition_i.holds, True)
    rec.eq("condition-ii-element", rep.condition_ii.witness_element, (1, 1, 1, 2))
    rec.eq("condition-ii-subset", rep.condition_ii.witness_subset,
           ((0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)))
    bh = barycentric_hull(poly, limits)
    rec.eq("simplex-count", bh.simplex_count, 58)
    rec.eq("hull-vertices", tuple(sorted(bh.hull_vertices)), tuple(
        (Fraction(a, 4), Fraction(b, 4), Fraction(c, 4))
        for a in (1, 3) for b in (1, 3) for c in (1, 3)))
    rec.true("baryhull-theorem", verify_baryhull_theorem(poly, limits).passed)


def _check_rhombus(poly, rec: _Recorder, limits: Limits):
    rec.eq("smooth", is_smooth(poly), False)
    rec.true("g-flat", is_g_flat(poly, limits).is_g_flat)
    rec.true("height-cone-g-stable", is_g_stable(omega_cone(poly), limits).is_g_stable)
    bh = barycentric_hull(poly, limits)
    rec.eq("simplex-count", bh.simplex_count, 8)
    rec.eq("hull-vertices", tuple(sorted(bh.hull_vertices)), tuple(
        (Fraction(a, 3), Fraction(b, 3)) for a in (-1, 1) for b in (-1, 1)))
    rec.eq("origin-is-barycenter",
           any(all(x == 0 for x in b) for b in bh.barycenters), False)
    osr = one_step_resolution(poly, limits)
    rec.eq("characteristics", osr.characteristics, (0, 2))
    rec.eq("resolved", osr.resolved, False)
    rec.eq("characteristic-independent", osr.characteristic_independent, True)
    final, _ = g_desingularize(fan_from_cone(omega_cone(poly)), limits=limits)
    rec.true("desing-moderate", is_moderate_resolution(final, omega_cone(poly)))


def _check_hexagon(poly, rec: _Recorder, limits: Limits):
    rec.true("smooth", is_smooth(poly))
    rec.eq("lattice-point-count", len(poly.lattice_points(limits)), 7)
    rec.true("height-cone-g-stable", is_g_stable(omega_cone(poly), limits).is_g_stable)
    bh = barycentric_hull(poly, limits)
    rec.eq("simplex-count", bh.simplex_count, 32)
    rec.eq("origin-is-barycenter",
           any(all(x == 0 for x in b) for b in bh.barycenters), True)
    rec.true("baryhull-theorem", verify_baryhull_theorem(poly, limits).passed)
    osr = one_step_resolution(poly, limits)
    rec.eq("characteristics", osr.characteristics, (0, 2, 3))
    rec.true("resolved", osr.resolved)
    rec.true("characteristic-independent", osr.characteristic_independent)
    final, _ = g_desingularize(fan_from_cone(omega_cone(poly)), limits=limits)
    rec.true("desing-moderate", is_moderate_resolution(final, omega_cone(poly)))


def _check_simplex_product(m: int, n: int, cone, rec: _Recorder, limits: Limits):
    rec.eq("rank", cone.dim, m + n - 1)
    rec.eq("hilbert-equals-generators", hilbert_elements(cone, limits), cone.gens)
    rec.true("g-stable", is_g_stable(cone, limits).is_g_stable)
    sigma = cone.dual()
    rec.eq("relevant-primes", relevant_primes(sigma, limits), ())
    rec.true("characteristic-agreement",
             compare_characteristics(sigma, limits=limits).equal_for_all)
    if (m, n) == (2, 2):
        rec.true("nash-smooth", nash_blowup_fan(sigma, 0, limits).smooth)


# ---------------------------------------------------------------------------
# registry

_REGISTRY: dict[str, Callable] = {}
for _n in range(1, 6):
    _REGISTRY[f"an-surface-{_n}"] = (
        lambda g, rec, limits, n=_n: _check_an_surface(n, g, rec, limits))
_REGISTRY["cond-i-failure"] = _check_cond_i_failure
_REGISTRY["cond-ii-failure"] = _check_cond_ii_failure
_REGISTRY["nonflat-tetrahedron"] = _check_nonflat_tetrahedron
_REGISTRY["nash-singular-3fold"] = _check_nash_3fold
_REGISTRY["nash-singular-3fold-dual"] = _check_nash_3fold_dual
for _n in (2, 3, 5):
    _REGISTRY[f"thin-triangle-{_n}"] = (
        lambda g, rec, limits, n=_n: _check_thin_triangle(n, g, rec, limits))
_REGISTRY["unit-square"] = _check_unit_square
_REGISTRY["unit-cube"] = _check_unit_cube
_REGISTRY["rhombus"] = _check_rhombus
_REGISTRY["hexagon"] = _check_hexagon
for _m, _k in ((2, 2), (2, 3), (3, 3)):
    _REGISTRY[f"simplex-product-{_m}-{_k}"] = (
        lambda g, rec, limits, m=_m, n=_k: _check_simplex_product(m, n, g, rec, limits))


def corpus_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def corpus_path(name: str) -> Path:
    return Path(str(resources.files("toricnash") / "data" / "corpus" / f"{name}.json"))


def load_entry(name_or_path: str):
    """Parsed geometry plus the registry name of the checks to run."""
    p = Path(name_or_path)
    if p.suffix == ".json":
        name = p.stem
    else:
        name = name_or_path
        p = corpus_path(name)
    if name not in _REGISTRY:
        raise ValueError(f"unknown corpus entry {name!r}; see 'corpus list'")
    with open(p, encoding="utf-8") as fh:
        return name, load_geometry(json.load(fh))


def run_entry(name_or_path: str, limits: Limits = DEFAULT_LIMITS) -> EntryResult:
    name, geometry = load_entry(name_or_path)
    rec = _Recorder()
    _REGISTRY[name](geometry, rec, limits)
    return EntryResult(name, tuple(rec.checks))


def run_corpus(limits: Limits = DEFAULT_LIMITS) -> tuple[EntryResult, ...]:
    return tuple(run_entry(name, limits) for name in corpus_names())
