"""Canonical JSON encoding of the kernel's geometric objects.

Every integer crosses the wire as a decimal string, so arbitrary-precision
values survive any JSON parser untouched; rationals are ``"p/q"`` strings.
Serialization is canonical — sorted keys, fixed two-space indent, trailing
newline — which makes output files byte-reproducible and lets the corpus
determinism check compare digests instead of re-parsing.

Schemas (all vectors are lists of decimal strings):

* lattice      ``{"ambient_dim": d}`` with an optional ``"basis"`` whose rows
  are a Z-basis of a sublattice of Z^d; objects attached to a based lattice
  state their generators in ambient coordinates and are converted to basis
  coordinates on load.
* cone         ``{"lattice": {...}, "generators": [v, ...]}``
* fan          ``{"lattice": {...}, "cones": [[v, ...], ...]}`` (maximal cones)
* polyhedron   ``{"points": [v, ...], "recession": cone}`` (recession optional)
* polytope     ``{"lattice": {...}, "vertices": [v, ...]}``

:func:`load_geometry` sniffs the schema from the keys present, which is what
lets one CLI verb accept either a bare cone or a whole fan.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from typing import Any, Sequence

from .cones import Cone, Lattice
from .fans import Fan
from .polyhedra import RationalPolyhedron, convex_hull, minkowski_polyhedron
from .polytopes import LatticePolytope

_INT_RE = re.compile(r"^-?\d+$")
_FRAC_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


# ---------------------------------------------------------------------------
# scalars and vectors

def enc_int(n: int) -> str:
    return str(int(n))


def enc_num(x) -> str:
    """Integer or Fraction to a decimal / ``p/q`` string."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def enc_vec(v: Sequence) -> list[str]:
    return [enc_num(x) for x in v]


def enc_vecs(vs) -> list[list[str]]:
    return [enc_vec(v) for v in vs]


def dec_int(s) -> int:
    if isinstance(s, bool):
        raise ValueError("expected an integer, got a boolean")
    if isinstance(s, int):
        return s
    if isinstance(s, str) and _INT_RE.match(s):
        return int(s)
    raise ValueError(f"expected a decimal-string integer, got {s!r}")


def dec_num(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError("expected a number, got a boolean")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        m = _FRAC_RE.match(s)
        if m:
            return Fraction(int(m.group(1)), int(m.group(2) or 1))
    raise ValueError(f"expected 'p' or 'p/q', got {s!r}")


def dec_vec(v) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise ValueError("expected a list for a vector")
    return tuple(dec_int(x) for x in v)


def dec_vecs(vs) -> list[tuple[int, ...]]:
    if not isinstance(vs, list):
        raise ValueError("expected a list of vectors")
    return [dec_vec(v) for v in vs]


# ---------------------------------------------------------------------------
# canonical dumps

def canonical_dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def digest(payload: Any) -> str:
    """sha256 of the canonical serialization — the determinism fingerprint."""
    return hashlib.sha256(canonical_dumps(payload).encode()).hexdigest()


# ---------------------------------------------------------------------------
# lattices

def lattice_to_json(lat: Lattice) -> dict:
    out: dict = {"ambient_dim": enc_int(lat.ambient_dim)}
    if lat.basis is not None:
        out["basis"] = enc_vecs(lat.basis)
    return out


def lattice_from_json(d) -> Lattice:
    if not isinstance(d, dict) or "ambient_dim" not in d:
        raise ValueError("lattice object needs an 'ambient_dim'")
    basis = d.get("basis")
    return Lattice(
        dec_int(d["ambient_dim"]),
        None if basis is None else tuple(dec_vecs(basis)),
    )


def _lattice_or_default(d, fallback_dim: int | None) -> Lattice:
    if "lattice" in d:
        return lattice_from_json(d["lattice"])
    if fallback_dim is None:
        raise ValueError("cannot infer the ambient dimension from an empty object")
    return Lattice(fallback_dim)


# ---------------------------------------------------------------------------
# cones and fans

def cone_to_json(cone: Cone, lattice: Lattice | None = None) -> dict:
    """Serialize by generators; with a based ``lattice``, the cone is assumed
    to live in basis coordinates and its generators are lifted to ambient."""
    if lattice is None or lattice.basis is None:
        lat = Lattice(cone.dim) if lattice is None else lattice
        gens = cone.gens
    else:
        if cone.dim != lattice.rank:
            raise ValueError("cone does not live in the given lattice's coordinates")
        lat = lattice
        gens = tuple(lattice.to_ambient(g) for g in cone.gens)
    return {"lattice": lattice_to_json(lat), "generators": enc_vecs(gens)}


def cone_from_json(d) -> Cone:
    """The cone in lattice coordinates (rank-dimensional when based)."""
    gens = dec_vecs(d["generators"])
    lat = _lattice_or_default(d, len(gens[0]) if gens else None)
    if lat.basis is not None:
        gens = [lat.to_coords(g) for g in gens]
    return Cone(gens, lat.rank)


def fan_to_json(fan: Fan, lattice: Lattice | None = None) -> dict:
    lat = lattice if lattice is not None else Lattice(fan.dim)
    cones = []
    for c in fan.maximal_cones:
        rays = c.rays if c.sdim > 0 else ((0,) * fan.dim,)
        if lat.basis is not None:
            rays = tuple(lat.to_ambient(r) for r in rays)
        cones.append(enc_vecs(rays))
    return {"lattice": lattice_to_json(lat), "cones": cones}


def fan_from_json(d) -> Fan:
    raw = d["cones"]
    if not isinstance(raw, list) or not raw:
        raise ValueError("fan object needs a non-empty 'cones' list")
    first = dec_vecs(raw[0])
    lat = _lattice_or_default(d, len(first[0]) if first else None)

    def build(vecs):
        gens = dec_vecs(vecs)
        if lat.basis is not None:
            gens = [lat.to_coords(g) for g in gens]
        return Cone(gens, lat.rank)

    return Fan([build(vecs) for vecs in raw], lat.rank)


# ---------------------------------------------------------------------------
# polyhedra and polytopes

def polyhedron_to_json(poly: RationalPolyhedron) -> dict:
    out: dict = {"points": [enc_vec(v) for v in poly.vertices]}
    rec = poly.recession
    if rec.gens:
        out["recession"] = cone_to_json(rec)
    return out


def polyhedron_from_json(d) -> RationalPolyhedron:
    points = dec_vecs(d["points"])
    if not points:
        raise ValueError("polyhedron object needs at least one point")
    if "recession" in d:
        return minkowski_polyhedron(points, cone_from_json(d["recession"]))
    return convex_hull(points)


def polytope_to_json(p: LatticePolytope) -> dict:
    return {
        "lattice": lattice_to_json(p.lattice),
        "vertices": enc_vecs(p.vertices),
    }


def polytope_from_json(d) -> LatticePolytope:
    vertices = dec_vecs(d["vertices"])
    if not vertices:
        raise ValueError("polytope object needs at least one vertex")
    lat = _lattice_or_default(d, len(vertices[0]))
    return LatticePolytope(vertices, lat)


# ---------------------------------------------------------------------------
# sniffing loader

def load_geometry(d: dict):
    """Dispatch on the keys of a parsed JSON object.

    Returns one of :class:`Cone`, :class:`Fan`, :class:`LatticePolytope` or
    :class:`RationalPolyhedron`.
    """
    if not isinstance(d, dict):
        raise ValueError("expected a JSON object")
    if "cones" in d:
        return fan_from_json(d)
    if "generators" in d:
        return cone_from_json(d)
    if "vertices" in d:
        return polytope_from_json(d)
    if "points" in d:
        return polyhedron_from_json(d)
    raise ValueError(
        "unrecognized object: expected one of the keys "
        "'generators', 'cones', 'vertices', 'points'"
    )


def load_geometry_file(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_geometry(json.load(fh))
