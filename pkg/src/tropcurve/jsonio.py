"""JSON schemas for curves, divisors, dual complexes and polygons.

Rationals serialize as strings "p/q" (or "p" when the denominator is 1);
lattice data serializes as plain integers.  Emission is canonical: fixed key
order, two-space indent, trailing newline, so serialize-parse-serialize is
byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .geom import GeometryError, IntVector, Point
from .curve import Edge, Ray, TropicalCurve
from .intersect import Divisor
from .newton import LatticePolygon, NewtonComplex


class SchemaError(GeometryError):
    """Input does not match the documented schema; names the field."""


def fraction_to_str(x: Fraction) -> str:
    return str(x)


def fraction_from_str(s, field: str) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"{field}: expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{field}: invalid rational {s!r}") from None


def _point_to_list(p: Point) -> list[str]:
    return [fraction_to_str(p.x), fraction_to_str(p.y)]


def _point_from(obj, field: str) -> Point:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise SchemaError(f"{field}: expected [x, y]")
    return Point(
        fraction_from_str(obj[0], f"{field}[0]"),
        fraction_from_str(obj[1], f"{field}[1]"),
    )


def _int_field(obj, field: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise SchemaError(f"{field}: expected an integer")
    return obj


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


def curve_to_dict(c: TropicalCurve) -> dict:
    return {
        "vertices": [_point_to_list(v) for v in c.vertices],
        "edges": [{"v": [e.a, e.b], "w": e.weight} for e in c.edges],
        "rays": [
            {"v": r.vertex, "dir": [r.direction.x, r.direction.y], "w": r.weight}
            for r in c.rays
        ],
    }


def curve_from_dict(d) -> TropicalCurve:
    if not isinstance(d, dict):
        raise SchemaError("curve: expected an object")
    for key in ("vertices", "edges", "rays"):
        if key not in d:
            raise SchemaError(f"curve.{key}: missing")
        if not isinstance(d[key], list):
            raise SchemaError(f"curve.{key}: expected a list")
    vertices = tuple(
        _point_from(v, f"vertices[{i}]") for i, v in enumerate(d["vertices"])
    )
    edges = []
    for i, e in enumerate(d["edges"]):
        if not isinstance(e, dict) or "v" not in e:
            raise SchemaError(f"edges[{i}]: expected an object with 'v'")
        pair = e["v"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"edges[{i}].v: expected [a, b]")
        edges.append(
            Edge(
                _int_field(pair[0], f"edges[{i}].v[0]"),
                _int_field(pair[1], f"edges[{i}].v[1]"),
                _int_field(e.get("w", 1), f"edges[{i}].w"),
            )
        )
    rays = []
    for i, r in enumerate(d["rays"]):
        if not isinstance(r, dict) or "v" not in r or "dir" not in r:
            raise SchemaError(f"rays[{i}]: expected an object with 'v' and 'dir'")
        direction = r["dir"]
        if not isinstance(direction, list) or len(direction) != 2:
            raise SchemaError(f"rays[{i}].dir: expected [dx, dy]")
        rays.append(
            Ray(
                _int_field(r["v"], f"rays[{i}].v"),
                IntVector(
                    _int_field(direction[0], f"rays[{i}].dir[0]"),
                    _int_field(direction[1], f"rays[{i}].dir[1]"),
                ),
                _int_field(r.get("w", 1), f"rays[{i}].w"),
            )
        )
    return TropicalCurve(vertices, tuple(edges), tuple(rays))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def curve_to_json(c: TropicalCurve) -> str:
    return dumps(curve_to_dict(c))


def curve_from_json(text: str) -> TropicalCurve:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"curve: invalid JSON ({err.msg} at char {err.pos})")
    return curve_from_dict(data)


def load_curve(path: str) -> TropicalCurve:
    with open(path, "r", encoding="utf-8") as fh:
        return curve_from_json(fh.read())


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------


def divisor_to_list(d: Divisor) -> list:
    return [
        {"point": _point_to_list(p), "multiplicity": m} for p, m in d.entries
    ]


def divisor_from_list(data, host: TropicalCurve | None = None) -> Divisor:
    if not isinstance(data, list):
        raise SchemaError("divisor: expected a list")
    acc: dict[Point, int] = {}
    for i, entry in enumerate(data):
        if not isinstance(entry, dict) or "point" not in entry:
            raise SchemaError(f"divisor[{i}]: expected an object with 'point'")
        p = _point_from(entry["point"], f"divisor[{i}].point")
        m = _int_field(entry.get("multiplicity", 1), f"divisor[{i}].multiplicity")
        acc[p] = acc.get(p, 0) + m
    return Divisor.of(acc, host)


def divisor_to_json(d: Divisor) -> str:
    return dumps(divisor_to_list(d))


def load_divisor(path: str, host: TropicalCurve | None = None) -> Divisor:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.loads(fh.read())
        except json.JSONDecodeError as err:
            raise SchemaError(
                f"divisor: invalid JSON ({err.msg} at char {err.pos})"
            )
    return divisor_from_list(data, host)


# ---------------------------------------------------------------------------
# Dual complexes and polygons (lattice points as integer pairs)
# ---------------------------------------------------------------------------


def polygon_to_list(p: LatticePolygon) -> list:
    return [[v.x, v.y] for v in p.vertices]


def complex_to_dict(nc: NewtonComplex) -> dict:
    return {
        "dual_vertices": [[w.x, w.y] for w in nc.dual_vertices],
        "dual_edges": [
            {
                "faces": [fi, fj],
                "item": [kind, idx],
                "from": [nc.dual_vertices[fi].x, nc.dual_vertices[fi].y],
                "to": [nc.dual_vertices[fj].x, nc.dual_vertices[fj].y],
            }
            for fi, fj, kind, idx in nc.dual_edges
        ],
    }
