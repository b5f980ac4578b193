"""Combinatorial triangulations, straight-line drawings and vertex contraction.

A triangulation is stored as a rotation system: for every vertex the
counterclockwise cyclic order of its neighbours.  Consecutive neighbours
``x, y`` of ``v`` span the counterclockwise face ``(v, x, y)``.  The
boundary triple is listed counterclockwise, so the outer face is traced as
its reversal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Mapping

from . import geom
from .errors import (BoundaryVertex, DegreeTooHigh, InvalidTriangulation,
                     KernelViolation, MultiEdge)
from .geom import Point, area2

Vertex = Hashable


def _cyclic_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = b.index(a[0])
    except ValueError:
        return False
    return tuple(b[k:]) + tuple(b[:k]) == tuple(a)


@dataclass(frozen=True, eq=False)
class Triangulation:
    rotation: Mapping[Vertex, tuple]
    boundary: tuple

    def __post_init__(self):
        object.__setattr__(self, "rotation", {v: tuple(ns) for v, ns in self.rotation.items()})
        object.__setattr__(self, "boundary", tuple(self.boundary))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        if self is other:
            return True
        if self.rotation.keys() != other.rotation.keys():
            return False
        if not _cyclic_equal(self.boundary, other.boundary):
            return False
        return all(_cyclic_equal(ns, other.rotation[v]) for v, ns in self.rotation.items())

    __hash__ = object.__hash__

    @cached_property
    def vertices(self) -> tuple:
        return tuple(self.rotation)

    @cached_property
    def adjacency(self) -> dict:
        return {v: frozenset(ns) for v, ns in self.rotation.items()}

    @cached_property
    def internal_vertices(self) -> tuple:
        b = set(self.boundary)
        return tuple(v for v in self.rotation if v not in b)

    def __len__(self) -> int:
        return len(self.rotation)

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def has_edge(self, u, v) -> bool:
        return v in self.adjacency[u]

    def is_boundary(self, v) -> bool:
        return v in self.boundary

    @cached_property
    def edges(self) -> tuple:
        out = []
        seen = set()
        for u, ns in self.rotation.items():
            for v in ns:
                key = frozenset((u, v))
                if key not in seen:
                    seen.add(key)
                    out.append((u, v))
        return tuple(out)

    @cached_property
    def faces(self) -> tuple:
        """Internal faces as counterclockwise vertex triples."""
        outer = {(self.boundary[1], self.boundary[0], self.boundary[2]),
                 (self.boundary[0], self.boundary[2], self.boundary[1]),
                 (self.boundary[2], self.boundary[1], self.boundary[0])}
        index = {v: {u: i for i, u in enumerate(ns)} for v, ns in self.rotation.items()}
        seen = set()
        out = []
        for u, ns in self.rotation.items():
            for i, v in enumerate(ns):
                w = ns[(i + 1) % len(ns)]
                face = (u, v, w)
                if face in seen:
                    continue
                seen.update({(u, v, w), (v, w, u), (w, u, v)})
                if face in outer:
                    continue
                out.append(face)
        del index
        return tuple(out)

    @cached_property
    def faces_by_vertex(self) -> dict:
        out = {v: [] for v in self.rotation}
        for f in self.faces:
            for v in f:
                out[v].append(f)
        return out

    def check(self) -> None:
        """Raise InvalidTriangulation unless this is a simple triangulation."""
        rot = self.rotation
        if len(self.boundary) != 3 or len(set(self.boundary)) != 3:
            raise InvalidTriangulation("boundary must be three distinct vertices")
        for v, ns in rot.items():
            if len(set(ns)) != len(ns):
                raise InvalidTriangulation(f"parallel edges at {v!r}")
            if v in ns:
                raise InvalidTriangulation(f"loop at {v!r}")
            for u in ns:
                if u not in rot or v not in rot[u]:
                    raise InvalidTriangulation(f"edge {v!r}-{u!r} not symmetric")
        n = len(rot)
        if n < 3:
            raise InvalidTriangulation("need at least three vertices")
        for b in self.boundary:
            if b not in rot:
                raise InvalidTriangulation(f"boundary vertex {b!r} missing")
        # every face traced through the rotation must close after three darts
        for u, ns in rot.items():
            for i, v in enumerate(ns):
                w = ns[(i + 1) % len(ns)]
                rv = rot[v]
                # face (u, v, w): at v the successor of w must be u
                j = rv.index(w) if w in rv else -1
                if j < 0 or rv[(j + 1) % len(rv)] != u:
                    raise InvalidTriangulation(f"face at {u!r},{v!r},{w!r} is not a triangle")
        e = len(self.edges)
        if e != 3 * n - 6:
            raise InvalidTriangulation(f"{e} edges, expected {3 * n - 6}")
        z1, z2, z3 = self.boundary
        if len(self.faces) != 2 * n - 5:
            raise InvalidTriangulation("boundary triple is not the outer face")
        ns = rot[z1]
        k = ns.index(z2) if z2 in ns else -1
        if k < 0 or ns[k - 1] != z3:
            raise InvalidTriangulation("boundary triple is not a face in clockwise rotation order")


@dataclass(frozen=True, eq=False)
class Drawing:
    triangulation: Triangulation
    coords: Mapping[Vertex, Point]

    def __post_init__(self):
        object.__setattr__(self, "coords", {v: geom.P(p) for v, p in self.coords.items()})

    def __getitem__(self, v) -> Point:
        return self.coords[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Drawing):
            return NotImplemented
        return self.coords == other.coords and self.triangulation == other.triangulation

    __hash__ = object.__hash__

    def with_coords(self, coords) -> "Drawing":
        return Drawing(self.triangulation, coords)

    def moved(self, updates: Mapping) -> "Drawing":
        c = dict(self.coords)
        c.update(updates)
        return Drawing(self.triangulation, c)


@dataclass(frozen=True)
class LinkPolygon:
    center: Vertex
    ring: tuple

    def points(self, d: Drawing) -> list:
        return [d.coords[v] for v in self.ring]


@dataclass(frozen=True, eq=False)
class ContractionRecord:
    p: Vertex
    a: Vertex
    ring: tuple
    position: Point
    before: Triangulation = field(repr=False)
    after: Triangulation = field(repr=False)

    def reversed_at(self, position) -> "ContractionRecord":
        return ContractionRecord(self.p, self.a, self.ring, geom.P(position), self.before, self.after)


# ---------------------------------------------------------------------------

def validate_drawing(d: Drawing, audit: bool = False) -> list:
    """Violations of the plane-drawing certificate; empty list means Ok."""
    tri = d.triangulation
    c = d.coords
    out = []
    missing = [v for v in tri.vertices if v not in c]
    if missing:
        return [f"missing coordinates for {missing!r}"]
    seen = {}
    for v in tri.vertices:
        p = c[v]
        if p in seen:
            out.append(f"coincident vertices {seen[p]!r} and {v!r} at {p}")
        seen[p] = v
    z1, z2, z3 = tri.boundary
    if area2(c[z1], c[z2], c[z3]) <= 0:
        out.append(f"boundary triangle {tri.boundary!r} not counterclockwise")
    for f in tri.faces:
        if area2(c[f[0]], c[f[1]], c[f[2]]) <= 0:
            out.append(f"face {f!r} not counterclockwise (orientation flipped)")
    if audit:
        out.extend(segment_audit(d))
    return out


def segment_audit(d: Drawing) -> list:
    """All-pairs check for crossing or touching non-incident edges."""
    c = d.coords
    edges = d.triangulation.edges
    out = []
    for i, (u1, v1) in enumerate(edges):
        for u2, v2 in edges[i + 1:]:
            if len({u1, v1, u2, v2}) < 4:
                continue
            if geom.segments_intersect(c[u1], c[v1], c[u2], c[v2]):
                out.append(f"edges {u1!r}-{v1!r} and {u2!r}-{v2!r} intersect")
    for v in d.triangulation.vertices:
        for u1, v1 in edges:
            if v in (u1, v1):
                continue
            if area2(c[u1], c[v1], c[v]) == 0 and geom.segments_intersect(c[u1], c[v1], c[v], c[v]):
                out.append(f"vertex {v!r} lies on edge {u1!r}-{v1!r}")
    return out


def is_valid(d: Drawing) -> bool:
    return not validate_drawing(d)


def topologically_equivalent(d1: Drawing, d2: Drawing) -> bool:
    return d1.triangulation == d2.triangulation


def link_polygon(d: Drawing, p) -> LinkPolygon:
    tri = d.triangulation if isinstance(d, Drawing) else d
    if tri.is_boundary(p):
        raise BoundaryVertex(f"{p!r} is on the boundary")
    return LinkPolygon(p, tri.rotation[p])


def fan_valid(d: Drawing, p, a) -> bool:
    """Contracting ``p`` to ``a`` leaves positively oriented fan triangles."""
    ring = d.triangulation.rotation[p]
    pts = [d.coords[v] for v in ring]
    return geom.in_open_kernel(pts[ring.index(a)], pts, skip_vertex=ring.index(a))


def new_edges(tri: Triangulation, p, a) -> list:
    ring = tri.rotation[p]
    k = len(ring)
    i = ring.index(a)
    return [ring[(i + j) % k] for j in range(2, k - 1)]


def creates_multi_edge(tri: Triangulation, p, a) -> bool:
    return any(tri.has_edge(a, x) for x in new_edges(tri, p, a))


def contract_triangulation(tri: Triangulation, p, a) -> Triangulation:
    ring = tri.rotation[p]
    k = len(ring)
    i = ring.index(a)
    r = [ring[(i + j) % k] for j in range(k)]  # r[0] == a
    rot = dict(tri.rotation)
    del rot[p]
    fan = r[2:k - 1]
    ra = list(rot[a])
    j = ra.index(p)
    rot[a] = tuple(ra[:j] + fan + ra[j + 1:])
    for x in fan:
        rx = rot[x]
        rot[x] = tuple(a if y == p else y for y in rx)
    for x in (r[1], r[k - 1]):
        rot[x] = tuple(y for y in rot[x] if y != p)
    return Triangulation(rot, tri.boundary)


def contract(d: Drawing, p, a, check_kernel: bool = True):
    tri = d.triangulation
    if tri.is_boundary(p):
        raise BoundaryVertex(f"{p!r} is on the boundary")
    if tri.degree(p) > 5:
        raise DegreeTooHigh(f"{p!r} has degree {tri.degree(p)}")
    ring = tri.rotation[p]
    if a not in ring:
        raise KernelViolation(f"{a!r} is not a neighbour of {p!r}")
    if creates_multi_edge(tri, p, a):
        raise MultiEdge(f"contracting {p!r} to {a!r} duplicates an existing edge")
    if check_kernel and not fan_valid(d, p, a):
        raise KernelViolation(f"{a!r} is not in the kernel of the link of {p!r}")
    after = contract_triangulation(tri, p, a)
    coords = dict(d.coords)
    pos = coords.pop(p)
    rec = ContractionRecord(p, a, ring, pos, tri, after)
    return Drawing(after, coords), rec


def uncontract(d: Drawing, rec: ContractionRecord, position) -> Drawing:
    position = geom.P(position)
    if not (d.triangulation is rec.after or d.triangulation == rec.after):
        raise KernelViolation("drawing is not on the reduced triangulation of this record")
    pts = [d.coords[v] for v in rec.ring]
    if not geom.in_open_kernel(position, pts):
        raise KernelViolation(f"{position} is not strictly inside the kernel of the link of {rec.p!r}")
    coords = dict(d.coords)
    coords[rec.p] = position
    return Drawing(rec.before, coords)


def low_degree_internal_vertices(d) -> list:
    tri = d.triangulation if isinstance(d, Drawing) else d
    return [v for v in tri.internal_vertices if tri.degree(v) <= 5]


def generic_placement(d: Drawing, ring):
    """Predicate: strictly inside the kernel of ``ring`` and on no line through
    two ring vertices or through a ring vertex and one of its neighbours.

    Points passing it create no straight angle at themselves or at their
    neighbours, which later contractions need for proper wedges.
    """
    pts = [d.coords[v] for v in ring]
    tri = d.triangulation
    lines = [(d.coords[u], d.coords[w]) for u in ring for w in tri.rotation.get(u, ()) if w in d.coords]

    def ok(q):
        return (geom.in_open_kernel(q, pts) and geom.off_lines(q, pts)
                and all(geom.area2(u, w, q) != 0 for u, w in lines))

    return ok


def kernel_point(d: Drawing, ring) -> Point:
    """An interior point of the kernel of the polygon on ``ring``."""
    pts = [d.coords[v] for v in ring]
    k = geom.kernel(pts, check_simple=False)
    if k.is_empty or k.area2() == 0:
        raise KernelViolation("link polygon has no interior kernel point")
    return geom.snap_inside(k.representative(), generic_placement(d, ring))


def interior_vertices_of(tri: Triangulation, triangle, region_interior) -> set:
    """Vertices of ``region_interior`` separated from outside by ``triangle``."""
    tset = set(triangle)
    start = None
    a, b, c = triangle
    ra = tri.rotation[a]
    # the vertex following b in a's rotation lies inside triangle (a, b, c)
    i = ra.index(b)
    cand = ra[(i + 1) % len(ra)]
    if cand not in tset:
        start = cand
    if start is None:
        return set()
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in tri.rotation[v]:
            if u not in tset and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen & set(region_interior)
