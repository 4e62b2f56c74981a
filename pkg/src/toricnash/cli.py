"""Command-line front end for the toric kernel.

Subcommands map one-to-one onto the library's public entry points; inputs
are the JSON schemas of :mod:`toricnash.jsonio`, and results print either as
canonical JSON or as a flat key/value table.

Exit codes:

* 0 — computed successfully / affirmative verdict
* 1 — negative verdict (not G-stable, blowup singular, theorem clause
  failed, desingularization impossible for the stated reason, ...)
* 2 — usage problems: unreadable files, malformed JSON, bad arguments
* 3 — a configured resource cap stopped the computation
* 4 — internal invariant violated (kernel contradiction or corpus mismatch)
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Sequence

from .config import DEFAULT_LIMITS
from .corpus import corpus_names, run_corpus, run_entry
from .cones import Cone
from .desing import DesingularizationError, g_desingularize, is_moderate_resolution
from .errors import KernelInvariantError, ResourceCapExceeded
from .fans import Fan, fan_from_cone
from .gstable import is_g_stable
from .hilbert import hilbert_elements
from .jsonio import (
    canonical_dumps,
    cone_to_json,
    digest,
    enc_int,
    enc_vec,
    enc_vecs,
    fan_to_json,
    load_geometry,
    polytope_to_json,
)
from .nash import (
    compare_characteristics,
    log_jacobian_points,
    nash_blowup_fan,
    nash_iterate,
    relevant_primes,
)
from .oracle import verify_cone, verify_random_2d
from .polytopes import (
    LatticePolytope,
    barycentric_hull,
    hexagon,
    is_g_flat,
    is_smooth,
    one_step_resolution,
    product_of_simplices,
    rhombus,
    standard_simplex,
    triangle_family,
    unit_cube,
    verify_baryhull_theorem,
)
from .svgfig import polytope_figure, write_svg


# ---------------------------------------------------------------------------
# rendering

def _table_lines(value, prefix: str) -> list[str]:
    if isinstance(value, dict):
        out: list[str] = []
        for k in value:
            out.extend(_table_lines(value[k], f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(value, list):
        if all(not isinstance(x, (dict, list)) for x in value):
            return [f"{prefix} = [{', '.join(str(x) for x in value)}]"]
        if all(isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x)
               for x in value):
            body = " ".join("(" + ",".join(str(y) for y in x) + ")" for x in value)
            return [f"{prefix} = {body}"]
        out = []
        for i, x in enumerate(value):
            out.extend(_table_lines(x, f"{prefix}[{i}]"))
        return out
    return [f"{prefix} = {value}"]


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(canonical_dumps(payload))
    else:
        sys.stdout.write("\n".join(_table_lines(payload, "")) + "\n")


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _load_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_geometry(json.load(fh))


def _as_cone(obj) -> Cone:
    if isinstance(obj, Cone):
        return obj
    raise ValueError("this command expects a cone input file")


def _as_polytope(obj) -> LatticePolytope:
    if isinstance(obj, LatticePolytope):
        return obj
    raise ValueError("this command expects a polytope input file")


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (exit_code, payload)

def _cmd_hilbert(ns):
    cone = _as_cone(_load_file(ns.input))
    basis = hilbert_elements(cone, ns.limits)
    return 0, {
        "ambient_dim": enc_int(cone.dim),
        "rays": enc_vecs(cone.rays),
        "hilbert_basis": enc_vecs(basis),
        "count": enc_int(len(basis)),
    }


def _cmd_gstable(ns):
    cone = _as_cone(_load_file(ns.input))
    rep = is_g_stable(cone, ns.limits)
    ci, cii = rep.condition_i, rep.condition_ii
    payload = {
        "is_g_stable": rep.is_g_stable,
        "condition_i": {
            "holds": ci.holds,
            "basis_not_on_boundary": enc_vecs(ci.basis_not_on_gamma),
            "boundary_not_in_basis": enc_vecs(ci.gamma_not_in_basis),
        },
        "condition_ii": {
            "holds": cii.holds,
            "witness_subset": None if cii.witness_subset is None else enc_vecs(cii.witness_subset),
            "witness_element": None if cii.witness_element is None else enc_vec(cii.witness_element),
        },
    }
    return (0 if rep.is_g_stable else 1), payload


def _cmd_desing(ns):
    obj = _load_file(ns.input)
    if isinstance(obj, Cone):
        source_cone: Cone | None = obj
        fan = fan_from_cone(obj)
    elif isinstance(obj, Fan):
        source_cone = None
        fan = obj
    else:
        raise ValueError("desing expects a cone or fan input file")
    limits = ns.limits
    if ns.max_steps is not None:
        limits = dataclasses.replace(limits, desing_steps=ns.max_steps)
    try:
        final, trace = g_desingularize(fan, check_g_stable=not ns.no_gstable_check,
                                       limits=limits)
    except DesingularizationError as exc:
        return 1, {
            "desingularized": False,
            "reason": exc.reason,
            "detail": exc.detail,
        }
    payload = {
        "desingularized": True,
        "fan": fan_to_json(final),
        "rays": enc_vecs(final.rays),
        "step_count": enc_int(len(trace.steps)),
        "steps": [
            {
                "dimension": enc_int(s.dimension),
                "cone_rays": enc_vecs(s.cone_rays),
                "new_ray": enc_vec(s.gamma),
                "extra_rays": enc_vecs(s.extra_gammas),
                "measures_before": enc_vec(s.measures_before),
                "measures_after": enc_vec(s.measures_after),
            }
            for s in trace.steps
        ],
    }
    if source_cone is not None:
        payload["moderate"] = is_moderate_resolution(final, source_cone)
    return 0, payload


def _nash_tree_json(tree) -> dict:
    out: dict = {
        "rays": enc_vecs(tree.sigma.rays),
        "regular": tree.sigma.is_regular,
        "depth_capped": tree.result is None,
    }
    if tree.result is not None:
        out["smooth"] = tree.result.smooth
        out["children"] = [_nash_tree_json(c) for c in tree.children]
    return out


def _cmd_nash(ns):
    cone = _as_cone(_load_file(ns.input))
    limits = ns.limits
    if ns.compare_chars:
        cmp = compare_characteristics(cone, limits=limits)
        payload = {
            "relevant_primes": [enc_int(p) for p in cmp.relevant_primes],
            "equal_for_all": cmp.equal_for_all,
            "disagreements": [
                {"char": enc_int(p), "vertex_difference": enc_vecs(diff)}
                for p, diff in cmp.disagreements
            ],
        }
        return (0 if cmp.equal_for_all else 1), payload
    if ns.iterate:
        tree = nash_iterate(cone, ns.char, max_depth=ns.max_depth, limits=limits)
        payload = {
            "char": enc_int(ns.char),
            "max_depth": enc_int(ns.max_depth),
            "resolved": tree.resolved,
            "depth_cap_hit": tree.cap_hit,
            "depth": enc_int(tree.depth),
            "tree": _nash_tree_json(tree),
        }
        if tree.resolved:
            return 0, payload
        return (3 if tree.cap_hit else 1), payload
    res = nash_blowup_fan(cone, ns.char, limits)
    payload = {
        "char": enc_int(ns.char),
        "log_jacobian_points": enc_vecs(log_jacobian_points(cone, ns.char, limits).points),
        "relevant_primes": [enc_int(p) for p in relevant_primes(cone, limits)],
        "newton_vertices": enc_vecs(sorted(res.newton.vertices)),
        "fan": fan_to_json(res.fan),
        "smooth": res.smooth,
        "singular_charts": [
            {"newton_vertex": enc_vec(v), "rays": enc_vecs(c.rays)}
            for v, c in res.singular_charts
        ],
    }
    return (0 if res.smooth else 1), payload


# -- polytope verbs ---------------------------------------------------------

def _cmd_polytope_gflat(ns):
    rep = is_g_flat(_as_polytope(_load_file(ns.input)), ns.limits)
    payload = {"is_g_flat": rep.is_g_flat, "offenders": enc_vecs(rep.offenders)}
    return (0 if rep.is_g_flat else 1), payload


def _cmd_polytope_smooth(ns):
    verdict = is_smooth(_as_polytope(_load_file(ns.input)))
    return (0 if verdict else 1), {"smooth": verdict}


def _cmd_polytope_baryhull(ns):
    poly = _as_polytope(_load_file(ns.input))
    bh = barycentric_hull(poly, ns.limits)
    payload = {
        "lattice_point_count": enc_int(len(poly.lattice_points(ns.limits))),
        "simplex_count": enc_int(bh.simplex_count),
        "barycenters": enc_vecs(bh.barycenters),
        "hull_vertices": enc_vecs(sorted(bh.hull_vertices)),
    }
    if ns.svg:
        if poly.dim != 2:
            raise ValueError("--svg drawings are two-dimensional")
        svg = polytope_figure(
            outline=poly.vertices,
            dots=poly.lattice_points(ns.limits),
            crosses=bh.barycenters,
            inner_outline=bh.hull_vertices,
        )
        write_svg(ns.svg, svg)
        payload["svg"] = ns.svg
    return 0, payload


def _cmd_polytope_verify_baryhull(ns):
    rep = verify_baryhull_theorem(_as_polytope(_load_file(ns.input)), ns.limits)
    payload = {
        "passed": rep.passed,
        "simplex_case": rep.simplex_case,
        "hull_matches_corners": rep.hull_matches_corners,
        "vertex_bijection": rep.vertex_bijection,
        "edges_parallel": rep.edges_parallel,
        "feasible_cones_match": rep.feasible_cones_match,
        "hull_smooth": rep.hull_smooth,
        "failures": list(rep.failures),
    }
    return (0 if rep.passed else 1), payload


def _cmd_polytope_onestep(ns):
    rep = one_step_resolution(_as_polytope(_load_file(ns.input)), ns.limits)
    payload = {
        "smooth": rep.smooth,
        "g_flat": rep.g_flat,
        "characteristics": [enc_int(c) for c in rep.characteristics],
        "verdicts": [{"char": enc_int(c), "smooth_blowup": v} for c, v in rep.verdicts],
        "resolved": rep.resolved,
        "characteristic_independent": rep.characteristic_independent,
    }
    return (0 if rep.resolved else 1), payload


_FAMILIES = {
    "cube": (1, "cube D — vertices of the unit D-cube"),
    "simplex": (1, "simplex D [K] — D-simplex conv(0, K e_i), K defaults to 1"),
    "triangle": (1, "triangle N — the (0,0),(N,0),(0,1) triangle"),
    "rhombus": (0, "rhombus — unit cross-polytope in the plane"),
    "hexagon": (0, "hexagon — the centrally symmetric lattice hexagon"),
    "simplex-product": (2, "simplex-product M N — cone over the product of simplices"),
}


def _cmd_polytope_gen(ns):
    name = ns.family
    args = ns.params
    if name not in _FAMILIES:
        raise ValueError(f"unknown family {name!r}; choices: {', '.join(sorted(_FAMILIES))}")
    need, _ = _FAMILIES[name]
    if len(args) < need:
        raise ValueError(f"family {name!r} needs {need} integer parameter(s)")
    if name == "cube":
        payload = polytope_to_json(unit_cube(args[0]))
    elif name == "simplex":
        scale = args[1] if len(args) > 1 else 1
        payload = polytope_to_json(standard_simplex(args[0], scale))
    elif name == "triangle":
        payload = polytope_to_json(triangle_family(args[0]))
    elif name == "rhombus":
        payload = polytope_to_json(rhombus())
    elif name == "hexagon":
        payload = polytope_to_json(hexagon())
    else:
        sp = product_of_simplices(args[0], args[1], ns.limits)
        payload = cone_to_json(sp.cone, sp.lattice)
    text = canonical_dumps(payload)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return 0, {"written": ns.output}
    sys.stdout.write(text)
    return 0, None


# -- corpus and oracle ------------------------------------------------------

def _corpus_payload(results) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "results": [
            {
                "name": r.name,
                "passed": r.passed,
                "checks": [
                    {
                        "label": c.label,
                        "passed": c.passed,
                        "expected": c.expected,
                        "observed": c.observed,
                    }
                    for c in r.checks
                ],
            }
            for r in results
        ],
    }


def _cmd_corpus(ns):
    if ns.action == "list":
        return 0, {"entries": list(corpus_names())}
    if ns.names:
        results = tuple(run_entry(n, ns.limits) for n in ns.names)
    else:
        results = run_corpus(ns.limits)
    payload = _corpus_payload(results)
    payload["digest"] = digest(payload["results"])
    if not payload["passed"]:
        bad = [
            f"{r.name}: {c.label} expected {c.expected} observed {c.observed}"
            for r in results if not r.passed
            for c in r.checks if not c.passed
        ]
        _fail("corpus mismatch — kernel contradicts pinned values\n  " + "\n  ".join(bad))
        return 4, payload
    return 0, payload


def _cmd_oracle(ns):
    checks = []
    if ns.input:
        checks.extend(verify_cone(_as_cone(_load_file(ns.input)), ns.limits))
    if ns.random_2d:
        checks.extend(verify_random_2d(ns.random_2d, ns.seed, ns.limits))
    if not checks:
        raise ValueError("oracle needs an input file and/or --random-2d N")
    payload = {
        "passed": all(c.passed for c in checks),
        "checks": [
            {"label": c.label, "passed": c.passed, "detail": c.detail} for c in checks
        ],
    }
    if not payload["passed"]:
        _fail("oracle disagreement — brute force contradicts the kernel")
        return 4, payload
    return 0, payload


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricnash",
        description="Exact toric geometry: Hilbert bases, G-stability, "
                    "desingularization, Nash blowups, lattice polytopes.",
    )
    parser.add_argument("--format", choices=("json", "table"), default="table",
                        help="output rendering (default: table)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized subcommands (default: 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilbert", help="Hilbert basis of a cone")
    p.add_argument("input")
    p.set_defaults(run=_cmd_hilbert)

    p = sub.add_parser("gstable", help="check both G-stability conditions")
    p.add_argument("input")
    p.set_defaults(run=_cmd_gstable)

    p = sub.add_parser("desing", help="G-desingularize a cone or fan")
    p.add_argument("input")
    p.add_argument("--no-gstable-check", action="store_true",
                   help="skip the G-stability precondition check")
    p.add_argument("--max-steps", type=int, default=None,
                   help="cap on star-subdivision steps")
    p.set_defaults(run=_cmd_desing)

    p = sub.add_parser("nash", help="normalized Nash blowup data of a cone")
    p.add_argument("input")
    p.add_argument("--char", type=int, default=0,
                   help="field characteristic, 0 or a prime (default: 0)")
    p.add_argument("--compare-chars", action="store_true",
                   help="compare Newton polyhedra across all relevant primes")
    p.add_argument("--iterate", action="store_true",
                   help="iterate the blowup on singular charts")
    p.add_argument("--max-depth", type=int, default=5,
                   help="iteration depth cap (default: 5)")
    p.set_defaults(run=_cmd_nash)

    p = sub.add_parser("polytope", help="lattice-polytope commands")
    psub = p.add_subparsers(dest="verb", required=True)

    q = psub.add_parser("gflat", help="is the height-one cone generated at height one?")
    q.add_argument("input")
    q.set_defaults(run=_cmd_polytope_gflat)

    q = psub.add_parser("smooth", help="smoothness of a full-dimensional lattice polytope")
    q.add_argument("input")
    q.set_defaults(run=_cmd_polytope_smooth)

    q = psub.add_parser("baryhull", help="barycentric hull of the lattice points")
    q.add_argument("input")
    q.add_argument("--svg", default=None, help="write a 2D figure to this path")
    q.set_defaults(run=_cmd_polytope_baryhull)

    q = psub.add_parser("verify-baryhull",
                        help="check all clauses of the barycentric-hull theorem")
    q.add_argument("input")
    q.set_defaults(run=_cmd_polytope_verify_baryhull)

    q = psub.add_parser("onestep",
                        help="one Nash blowup of the cone over the polytope, all characteristics")
    q.add_argument("input")
    q.set_defaults(run=_cmd_polytope_onestep)

    q = psub.add_parser("gen", help="generate a named example family")
    q.add_argument("family", help=", ".join(f"{k}" for k in sorted(_FAMILIES)))
    q.add_argument("params", type=int, nargs="*")
    q.add_argument("-o", "--output", default=None)
    q.set_defaults(run=_cmd_polytope_gen)

    p = sub.add_parser("corpus", help="bundled examples with pinned outputs")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("names", nargs="*",
                   help="entry names or paths to entry files (default: all)")
    p.set_defaults(run=_cmd_corpus)

    p = sub.add_parser("oracle", help="brute-force cross-checks of the kernel")
    p.add_argument("input", nargs="?", default=None,
                   help="cone file to verify by bounded enumeration")
    p.add_argument("--random-2d", type=int, default=0, metavar="N",
                   help="also verify N random planar cones")
    p.add_argument("--seed", type=int, help="seed for the random batch")
    p.set_defaults(run=_cmd_oracle)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ns.limits = DEFAULT_LIMITS
    try:
        code, payload = ns.run(ns)
    except ResourceCapExceeded as exc:
        _fail(str(exc))
        return 3
    except (KernelInvariantError, AssertionError) as exc:
        _fail(f"internal invariant violated: {exc}")
        return 4
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        _fail(str(exc))
        return 2
    if payload is not None:
        _emit(payload, ns.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
