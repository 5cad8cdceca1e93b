import json

import pytest
from hypothesis import given

from logconn.algebra import FLOAT
from logconn.gauge import elm_minus, twist
from logconn.painleve import PQPoint
from logconn.sampling import (
    SHAPES,
    make_rng,
    random_connection,
    random_fuchsian,
    random_garnier,
    random_pqpoint,
    to_backend,
)
from logconn.serialize import SchemaError, detect, from_json, move_from_json, move_to_json, to_json

from .strategies import seeds


def _through_text(value):
    return from_json(json.loads(json.dumps(to_json(value))))


@given(seeds)
def test_fuchsian_roundtrip(seed):
    sys = random_fuchsian(make_rng(seed))
    assert _through_text(sys) == sys


def test_float_fuchsian_roundtrip():
    sys = to_backend(random_fuchsian(make_rng(1)), FLOAT)
    assert _through_text(sys) == sys


@given(seeds)
def test_connection_roundtrip(seed):
    rng = make_rng(seed)
    for shape in SHAPES:
        conn = random_connection(rng, shape)
        conn = twist(elm_minus(conn, 1), 0, [conn.one * 0] * 4)
        back = _through_text(conn)
        assert back.same_as(conn) and back.history == conn.history


def test_points_roundtrip():
    rng = make_rng(2)
    pt = random_pqpoint(rng)
    assert _through_text(pt).same_as(pt)
    ex = PQPoint.exceptional(2, "-", pt.p, pt.spectral, pt.t)
    assert _through_text(ex).same_as(ex)
    inf = PQPoint.at_infinity(pt.q, pt.spectral, pt.t)
    assert _through_text(inf).same_as(inf)
    gp = random_garnier(rng, 6)
    assert _through_text(gp).same_as(gp)


def test_detect_and_errors():
    assert detect({"A": []}) == "fuchsian"
    assert detect({"bundle": [0, 1]}) == "connection"
    assert detect({"pairs": []}) == "garnier"
    assert detect({"q": 1, "p": 2}) == "pqpoint"
    with pytest.raises(SchemaError):
        detect([1, 2])
    with pytest.raises(SchemaError):
        detect({"unknown": 1})
    with pytest.raises(SchemaError):
        from_json({"A": [[[1, 0], [0, 1]]], "t": [0]})
    with pytest.raises(SchemaError):
        move_from_json({"i": 1})


def test_move_codec():
    move = {"move": "twist", "k": -1, "lambda": [1, 0, 0, 0]}
    decoded = move_from_json(move)
    assert move_from_json(json.loads(json.dumps(move_to_json(decoded)))) == decoded
