"""JSON interchange: decimal-string integers, canonical dumps, schema sniffing."""

import json
from fractions import Fraction

import pytest

from toricnash.cones import Cone, Lattice
from toricnash.fans import Fan
from toricnash.jsonio import (
    canonical_dumps,
    cone_from_json,
    cone_to_json,
    dec_int,
    dec_num,
    dec_vec,
    digest,
    enc_int,
    enc_num,
    enc_vec,
    fan_from_json,
    fan_to_json,
    load_geometry,
    polyhedron_from_json,
    polyhedron_to_json,
    polytope_from_json,
    polytope_to_json,
)
from toricnash.polyhedra import convex_hull, minkowski_polyhedron
from toricnash.polytopes import LatticePolytope, product_of_simplices


# ---------------------------------------------------------------------------
# scalars

def test_integers_encode_as_decimal_strings():
    assert enc_int(0) == "0"
    assert enc_int(-17) == "-17"
    assert enc_int(10**30) == str(10**30)


def test_fractions_encode_with_slash():
    assert enc_num(Fraction(3, 4)) == "3/4"
    assert enc_num(Fraction(-5, 1)) == "-5"
    assert enc_num(7) == "7"


def test_dec_int_accepts_strings_and_ints_rejects_rest():
    assert dec_int("42") == 42
    assert dec_int("-7") == -7
    assert dec_int(13) == 13
    with pytest.raises(ValueError):
        dec_int("3/2")
    with pytest.raises(ValueError):
        dec_int(True)
    with pytest.raises(ValueError):
        dec_int(3.0)


def test_dec_num_roundtrip():
    for x in [Fraction(22, 7), Fraction(-1, 3), 5]:
        assert dec_num(enc_num(x)) == x


def test_dec_vec_is_integer_only():
    assert dec_vec(["3", "-4"]) == (3, -4)
    with pytest.raises(ValueError):
        dec_vec(["1", "1/2"])


# ---------------------------------------------------------------------------
# canonical form and digests

def test_canonical_dumps_is_sorted_and_newline_terminated():
    text = canonical_dumps({"b": "1", "a": "2"})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": "2", "b": "1"}


def test_digest_ignores_key_order():
    assert digest({"x": "1", "y": "2"}) == digest({"y": "2", "x": "1"})
    assert digest({"x": "1"}) != digest({"x": "2"})


# ---------------------------------------------------------------------------
# geometry roundtrips

def test_cone_roundtrip():
    c = Cone([(1, 0), (1, 4)])
    assert cone_from_json(cone_to_json(c)) == c


def test_cone_with_embedded_lattice_roundtrip():
    sp = product_of_simplices(2, 2)
    payload = cone_to_json(sp.cone, sp.lattice)
    back = cone_from_json(payload)
    assert back == sp.cone


def test_fan_roundtrip():
    fan = Fan([Cone([(1, 0), (1, 1)]), Cone([(1, 1), (0, 1)])], 2)
    assert fan_from_json(fan_to_json(fan)) == fan


def test_polytope_roundtrip():
    p = LatticePolytope([(0, 0), (2, 0), (0, 3)])
    assert polytope_from_json(polytope_to_json(p)) == p


def test_polyhedron_roundtrip_bounded_and_unbounded():
    bounded = convex_hull([(0, 0), (1, 0), (0, 1)])
    assert polyhedron_from_json(polyhedron_to_json(bounded)) == bounded
    unbounded = minkowski_polyhedron([(1, 1)], Cone([(1, 0), (0, 1)]))
    assert polyhedron_from_json(polyhedron_to_json(unbounded)) == unbounded


def test_roundtrip_is_byte_stable():
    c = Cone([(0, 1, 0), (1, 0, 0), (2, 2, 3)])
    once = canonical_dumps(cone_to_json(c))
    twice = canonical_dumps(cone_to_json(cone_from_json(json.loads(once))))
    assert once == twice


# ---------------------------------------------------------------------------
# schema sniffing

def test_load_geometry_dispatches_on_keys():
    assert isinstance(load_geometry(cone_to_json(Cone([(1, 0), (0, 1)]))), Cone)
    fan = Fan([Cone([(1, 0), (0, 1)])], 2)
    assert isinstance(load_geometry(fan_to_json(fan)), Fan)
    p = LatticePolytope([(0, 0), (1, 0), (0, 1)])
    assert isinstance(load_geometry(polytope_to_json(p)), LatticePolytope)
    poly = minkowski_polyhedron([(1, 1)], Cone([(1, 0), (0, 1)]))
    from toricnash.polyhedra import RationalPolyhedron

    assert isinstance(load_geometry(polyhedron_to_json(poly)), RationalPolyhedron)


def test_load_geometry_rejects_unknown_schema():
    with pytest.raises(ValueError):
        load_geometry({"widgets": []})


def test_malformed_vectors_rejected():
    with pytest.raises(ValueError):
        cone_from_json({"lattice": {"ambient_dim": "2"}, "generators": [["1", "x"]]})
