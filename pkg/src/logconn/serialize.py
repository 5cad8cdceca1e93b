"""JSON encoding of every value the command line reads or writes.

Exact scalars are written as ``{"re": "p/q", "im": "p/q"}`` and floats as
``{"re": float, "im": float}``; decoding picks the backend from the shape,
so exact data round-trips losslessly.
"""

from __future__ import annotations

from dataclasses import replace

from .algebra import Matrix2, PoleConfig, Poly
from .algebra.scalar import from_json as scalar_from_json
from .algebra.scalar import to_json as scalar_to_json
from .connection import BundleType, LogConnection, from_parts
from .fuchsian import CubicPoint, FuchsianSystem
from .garnier import GarnierPoint
from .painleve import EXCEPTIONAL, INFINITY, INTERIOR, PQPoint
from .spectral import SpectralData


class SchemaError(ValueError):
    """The JSON document does not match the expected shape."""


enc = scalar_to_json


def dec(obj):
    try:
        return scalar_from_json(obj)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from exc


def _field(obj, key):
    try:
        return obj[key]
    except (KeyError, TypeError):
        raise SchemaError(f"missing field {key!r}") from None


def matrix_to_json(m):
    return [[enc(m.a), enc(m.b)], [enc(m.c), enc(m.d)]]


def matrix_from_json(obj):
    try:
        (a, b), (c, d) = obj
    except (TypeError, ValueError):
        raise SchemaError("a matrix is [[a, b], [c, d]]") from None
    return Matrix2(dec(a), dec(b), dec(c), dec(d))


def poly_to_json(p):
    return [enc(c) for c in p.coeffs]


def poly_from_json(obj):
    if not isinstance(obj, list):
        raise SchemaError("a polynomial is a list of coefficients, constant term first")
    return Poly([dec(c) for c in obj])


def vector_to_json(v):
    return None if v is None else [enc(v[0]), enc(v[1])]


def vector_from_json(obj):
    return None if obj is None else (dec(obj[0]), dec(obj[1]))


def spectral_to_json(s):
    return [[enc(p), enc(m)] for p, m in s.pairs()]


def spectral_from_json(obj):
    """Pairs ``[theta+, theta-]``; bare scalars stand for ``(theta, -theta)``."""
    pairs = []
    for item in obj:
        if isinstance(item, list):
            pairs.append((dec(item[0]), dec(item[1])))
        else:
            th = dec(item)
            pairs.append((th, -th))
    return SpectralData.from_pairs(pairs)


def _poles(obj):
    return PoleConfig(tuple(dec(x) for x in obj))


# --------------------------------------------------------------------------
# systems and points


def fuchsian_to_json(sys):
    return {"t": [enc(x) for x in sys.poles], "theta": [enc(x) for x in sys.theta],
            "A": [matrix_to_json(a) for a in sys.residues]}


def fuchsian_from_json(obj):
    theta = tuple(dec(x) for x in _field(obj, "theta"))
    return FuchsianSystem(_poles(_field(obj, "t")),
                          tuple(matrix_from_json(a) for a in _field(obj, "A")),
                          SpectralData.sl2(theta))


def cubic_to_json(pt):
    return {"X": [enc(pt.X1), enc(pt.X2), enc(pt.X3)], "Y": enc(pt.Y)}


def cubic_from_json(obj):
    X = [dec(x) for x in _field(obj, "X")]
    return CubicPoint(*X, dec(_field(obj, "Y")))


def connection_to_json(conn, history=True):
    pp = conn.poly_part()
    out = {
        "bundle": conn.bundle.as_list(),
        "t": [enc(x) for x in conn.t],
        "q": [enc(x) for x in conn.q],
        "theta": spectral_to_json(conn.spectral),
        "residues": [matrix_to_json(r) for r in conn.residues()],
        "poly_part": [[poly_to_json(pp.a), poly_to_json(pp.b)],
                      [poly_to_json(pp.c), poly_to_json(pp.d)]],
        "parabolics": [vector_to_json(l) for l in conn.parabolics],
    }
    if history and conn.history:
        out["history"] = [move_to_json(m) for m in conn.history]
    return out


def connection_from_json(obj, default_parabolic="plus"):
    """Parabolics missing from the document default to the named eigendirection."""
    t = _poles(_field(obj, "t"))
    q = tuple(dec(x) for x in obj.get("q", []))
    residues = [matrix_from_json(r) for r in _field(obj, "residues")]
    if len(residues) != len(t) + len(q):
        raise SchemaError("one residue per pole (true poles first) is required")
    rows = obj.get("poly_part")
    if rows:
        (a, b), (c, d) = rows
        poly_part = Matrix2(poly_from_json(a), poly_from_json(b), poly_from_json(c), poly_from_json(d))
    else:
        poly_part = Matrix2.zero(Poly())
    parabolics = obj.get("parabolics")
    parabolics = [vector_from_json(v) for v in parabolics] if parabolics else None
    conn = from_parts(BundleType(*_field(obj, "bundle")), t, residues, poly_part,
                      spectral_from_json(_field(obj, "theta")), parabolics, q,
                      default_parabolic=default_parabolic)
    if obj.get("history"):
        conn = replace(conn, history=tuple(move_from_json(m) for m in obj["history"]))
    return conn


def pqpoint_to_json(pt):
    out = {"kind": pt.kind, "t": [enc(x) for x in pt.t], "theta": spectral_to_json(pt.spectral)}
    if pt.kind == INTERIOR:
        out.update(q=enc(pt.q), p=enc(pt.p))
    elif pt.kind == INFINITY:
        out.update(y=enc(pt.y))
    else:
        out.update(i=pt.i, sign=pt.sign, coord=enc(pt.coord), divisor=pt.divisor())
    return out


def pqpoint_from_json(obj):
    kind = obj.get("kind", INTERIOR)
    t = _poles(_field(obj, "t"))
    spectral = spectral_from_json(_field(obj, "theta"))
    if kind == INTERIOR:
        return PQPoint.interior(dec(_field(obj, "q")), dec(_field(obj, "p")), spectral, t)
    if kind == INFINITY:
        return PQPoint.at_infinity(dec(_field(obj, "y")), spectral, t)
    if kind == EXCEPTIONAL:
        return PQPoint.exceptional(int(_field(obj, "i")), _field(obj, "sign"),
                                   dec(_field(obj, "coord")), spectral, t)
    raise SchemaError(f"unknown point kind {kind!r}")


def garnier_to_json(pt):
    return {"pairs": [[enc(q), enc(p)] for q, p in pt.pairs], "t": [enc(x) for x in pt.t],
            "theta": spectral_to_json(pt.spectral)}


def garnier_from_json(obj):
    pairs = tuple((dec(q), dec(p)) for q, p in _field(obj, "pairs"))
    return GarnierPoint(pairs, spectral_from_json(_field(obj, "theta")), _poles(_field(obj, "t")))


# --------------------------------------------------------------------------
# move logs

_SCALAR_KEYS = ("q", "l1", "l2")


def move_to_json(move):
    out = {}
    for key, value in move.items():
        if key == "M":
            out[key] = matrix_to_json(value)
        elif key == "f":
            out[key] = poly_to_json(value)
        elif key == "direction":
            out[key] = vector_to_json(value)
        elif key == "lambda":
            out[key] = [enc(x) for x in value]
        elif key in _SCALAR_KEYS:
            out[key] = enc(value)
        else:
            out[key] = value
    return out


def move_from_json(obj):
    if not isinstance(obj, dict) or "move" not in obj:
        raise SchemaError("a move is an object with a 'move' field")
    out = {}
    for key, value in obj.items():
        if key == "M":
            out[key] = matrix_from_json(value)
        elif key == "f":
            out[key] = poly_from_json(value) if isinstance(value, list) else Poly.const(dec(value))
        elif key == "direction":
            out[key] = vector_from_json(value)
        elif key == "lambda":
            out[key] = [dec(x) for x in value]
        elif key in _SCALAR_KEYS:
            out[key] = dec(value)
        elif key in ("i", "k"):
            out[key] = int(value)
        else:
            out[key] = value
    return out


# --------------------------------------------------------------------------
# dispatch on document shape


def to_json(value):
    if isinstance(value, FuchsianSystem):
        return fuchsian_to_json(value)
    if isinstance(value, CubicPoint):
        return cubic_to_json(value)
    if isinstance(value, LogConnection):
        return connection_to_json(value)
    if isinstance(value, PQPoint):
        return pqpoint_to_json(value)
    if isinstance(value, GarnierPoint):
        return garnier_to_json(value)
    raise TypeError(f"no JSON encoding for {type(value).__name__}")


def detect(obj):
    """Name of the schema a decoded document follows."""
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object")
    if "A" in obj:
        return "fuchsian"
    if "bundle" in obj:
        return "connection"
    if "pairs" in obj:
        return "garnier"
    if "X" in obj:
        return "cubic"
    if "kind" in obj or ("q" in obj and "p" in obj):
        return "pqpoint"
    raise SchemaError("unrecognized document")


def from_json(obj):
    kind = detect(obj)
    return {"fuchsian": fuchsian_from_json, "connection": connection_from_json,
            "garnier": garnier_from_json, "cubic": cubic_from_json,
            "pqpoint": pqpoint_from_json}[kind](obj)
