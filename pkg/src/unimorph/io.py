"""JSON file formats.  Coordinates are exact rational strings like "3/8"."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .geom import Point
from .morph import AnyDirection, Direction, Morph, NotUnidirectional
from .triangulation import Drawing, Triangulation


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str = ""):
        self.line = line
        self.column = column
        self.path = path
        where = f"line {line}, column {column}: " if line else ""
        at = f" (at {path})" if path else ""
        super().__init__(f"{where}{message}{at}")


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _locate(text: str, needle: str):
    """Best-effort line/column of a key in the raw text, for diagnostics."""
    i = text.find(needle)
    if i < 0:
        return 0, 0
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


def rational_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(v, path: str) -> Fraction:
    if isinstance(v, bool):
        raise ParseError("expected a rational, got a boolean", path=path)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational {v!r}", path=path) from None
    raise ParseError(f"expected a rational string like \"3/4\", got {type(v).__name__}", path=path)


# ---------------------------------------------------------------------------

def triangulation_to_json(tri: Triangulation) -> dict:
    return {
        "vertices": list(tri.vertices),
        "rotation": {str(v): list(tri.rotation[v]) for v in tri.vertices},
        "boundary": list(tri.boundary),
    }


def _id_map(vertices, path):
    out = {}
    for v in vertices:
        if not isinstance(v, (int, str)) or isinstance(v, bool):
            raise ParseError(f"vertex id {v!r} must be an integer or string", path=path)
        if str(v) in out:
            raise ParseError(f"duplicate vertex id {v!r}", path=path)
        out[str(v)] = v
    return out


def triangulation_from_json(obj, path: str = "") -> Triangulation:
    if not isinstance(obj, dict):
        raise ParseError("triangulation must be an object", path=path)
    for key in ("vertices", "rotation", "boundary"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}", path=path)
    ids = _id_map(obj["vertices"], f"{path}/vertices")

    def vid(x, where):
        if str(x) not in ids:
            raise ParseError(f"unknown vertex {x!r}", path=where)
        return ids[str(x)]

    rot = {}
    for k, nbrs in obj["rotation"].items():
        rot[vid(k, f"{path}/rotation")] = tuple(vid(u, f"{path}/rotation/{k}") for u in nbrs)
    boundary = tuple(vid(u, f"{path}/boundary") for u in obj["boundary"])
    if len(boundary) != 3:
        raise ParseError("boundary must list three vertices", path=f"{path}/boundary")
    return Triangulation(rot, boundary)


def coords_to_json(coords) -> dict:
    return {str(v): [rational_str(p[0]), rational_str(p[1])] for v, p in coords.items()}


def coords_from_json(obj, tri: Triangulation, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ParseError("coordinates must be an object", path=path)
    ids = {str(v): v for v in tri.vertices}
    out = {}
    for k, xy in obj.items():
        if k not in ids:
            raise ParseError(f"unknown vertex {k!r}", path=path)
        if not isinstance(xy, list) or len(xy) != 2:
            raise ParseError("a coordinate must be a pair", path=f"{path}/{k}")
        out[ids[k]] = Point(parse_rational(xy[0], f"{path}/{k}"), parse_rational(xy[1], f"{path}/{k}"))
    missing = set(tri.vertices) - set(out)
    if missing:
        raise ParseError(f"no coordinates for {sorted(map(str, missing))}", path=path)
    return out


def _with_location(text: str, exc: ParseError) -> ParseError:
    if exc.line or not exc.path:
        return exc
    key = exc.path.rstrip("/").split("/")[-1]
    line, col = _locate(text, f'"{key}"')
    return ParseError(str(exc).split(" (at ")[0], line, col, exc.path)


# ---------------------------------------------------------------------------
# drawing pairs

def dump_pair(d1: Drawing, d2: Drawing) -> str:
    obj = triangulation_to_json(d1.triangulation)
    obj["coords"] = {"first": coords_to_json(d1.coords), "second": coords_to_json(d2.coords)}
    return json.dumps(obj, indent=1)


def load_pair(text: str):
    """Returns (d1, d2).  The two drawings share the file's triangulation."""
    obj = _loads(text)
    try:
        if not isinstance(obj, dict):
            raise ParseError("top level must be an object")
        tri = triangulation_from_json(obj)
        coords = obj.get("coords")
        if not isinstance(coords, dict) or "first" not in coords or "second" not in coords:
            raise ParseError("coords must hold 'first' and 'second'", path="/coords")
        c1 = coords_from_json(coords["first"], tri, "/coords/first")
        c2 = coords_from_json(coords["second"], tri, "/coords/second")
    except ParseError as exc:
        raise _with_location(text, exc) from None
    return Drawing(tri, c1), Drawing(tri, c2)


# ---------------------------------------------------------------------------
# morphs

def direction_to_json(d) -> Any:
    if isinstance(d, AnyDirection):
        return "any"
    if isinstance(d, Direction):
        return [rational_str(d.vector[0]), rational_str(d.vector[1])]
    if isinstance(d, NotUnidirectional):
        return {"not_unidirectional": [str(d.u), str(d.v)]}
    raise TypeError(d)


def dump_morph(m: Morph, preview: bool = False) -> str:
    obj = {
        "triangulation": triangulation_to_json(m.triangulation),
        "keyframes": [coords_to_json(k) for k in m.keyframes],
        "directions": [direction_to_json(d) for d in m.directions()],
        "provenance": list(m.provenance),
    }
    if preview:
        obj["preview"] = [{str(v): [float(p[0]), float(p[1])] for v, p in k.items()} for k in m.keyframes]
    return json.dumps(obj, indent=1)


def load_morph(text: str) -> Morph:
    """Directions and previews in the file are ignored; they are re-derived."""
    obj = _loads(text)
    try:
        if not isinstance(obj, dict):
            raise ParseError("top level must be an object")
        if "triangulation" not in obj or "keyframes" not in obj:
            raise ParseError("morph file needs 'triangulation' and 'keyframes'")
        tri = triangulation_from_json(obj["triangulation"], "/triangulation")
        frames = obj["keyframes"]
        if not isinstance(frames, list) or not frames:
            raise ParseError("keyframes must be a nonempty list", path="/keyframes")
        keyframes = tuple(coords_from_json(k, tri, f"/keyframes/{i}") for i, k in enumerate(frames))
        prov = obj.get("provenance", [])
        if not isinstance(prov, list) or (prov and len(prov) != len(keyframes) - 1):
            raise ParseError("provenance must have one tag per step", path="/provenance")
    except ParseError as exc:
        raise _with_location(text, exc) from None
    return Morph(tri, keyframes, tuple(str(p) for p in prov))


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=1, default=str)


def load_report(text: str) -> dict:
    return _loads(text)
