"""Exact rational plane geometry.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this
module rounds.  Points and vectors are small named tuples so they hash and
compare structurally.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

from .errors import BadWeights, DegenerateTriangle, EmptyRegion, NotSimple

Scalar = Fraction
Number = Union[int, Fraction]


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coordinates")
    return Fraction(x)


def P(v) -> "Point":
    """Coerce any pair to an exact Point."""
    if isinstance(v, Point) and isinstance(v.x, Fraction) and isinstance(v.y, Fraction):
        return v
    return Point(Q(v[0]), Q(v[1]))


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(Q(x), Q(y))

    def __add__(self, v):  # type: ignore[override]
        return Point(self.x + v[0], self.y + v[1])

    def __sub__(self, other) -> "Vector":
        return Vector(self.x - other[0], self.y - other[1])


class Vector(NamedTuple):
    dx: Fraction
    dy: Fraction

    @classmethod
    def of(cls, dx, dy) -> "Vector":
        return cls(Q(dx), Q(dy))

    def __add__(self, v):  # type: ignore[override]
        return Vector(self.dx + v[0], self.dy + v[1])

    def __neg__(self) -> "Vector":
        return Vector(-self.dx, -self.dy)

    def scale(self, k) -> "Vector":
        return Vector(self.dx * k, self.dy * k)

    def is_zero(self) -> bool:
        return self.dx == 0 and self.dy == 0


def cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def area2(p, q, r) -> Fraction:
    """Twice the signed area of triangle pqr (positive when counterclockwise)."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def lerp(p, q, t) -> Point:
    return Point(p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)


def midpoint(p, q) -> Point:
    return Point((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)


def combination(weights: Sequence, points: Sequence) -> Point:
    x = sum((w * p[0] for w, p in zip(weights, points)), Fraction(0))
    y = sum((w * p[1] for w, p in zip(weights, points)), Fraction(0))
    return Point(x, y)


def centroid(points: Sequence) -> Point:
    n = len(points)
    return Point(sum((p[0] for p in points), Fraction(0)) / n,
                 sum((p[1] for p in points), Fraction(0)) / n)


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


def orientation(p, q, r) -> Orientation:
    a = area2(p, q, r)
    if a > 0:
        return Orientation.COUNTERCLOCKWISE
    if a < 0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def parallel(u, v) -> bool:
    """Zero vectors are parallel to everything (a stationary vertex)."""
    return cross(u, v) == 0


def barycentric(x, a, b, c) -> tuple[Fraction, Fraction, Fraction]:
    x, a, b, c = P(x), P(a), P(b), P(c)
    d = area2(a, b, c)
    if d == 0:
        raise DegenerateTriangle(f"collinear triangle {a}, {b}, {c}")
    l1 = area2(x, b, c) / d
    l2 = area2(a, x, c) / d
    return l1, l2, 1 - l1 - l2


def follow_displacement(weights, magnitudes) -> Fraction:
    """Displacement of a point riding at fixed barycentric weights.

    If the triangle corners move by ``k_i`` times a common direction, the
    tracked point moves by ``sum(w_i * k_i)`` times that direction.
    """
    weights = [Q(w) for w in weights]
    if sum(weights) != 1:
        raise BadWeights(f"weights sum to {sum(weights)}, not 1")
    return sum((w * Q(k) for w, k in zip(weights, magnitudes)), Fraction(0))


# ---------------------------------------------------------------------------
# square roots

def sqrt_floor(x: Fraction, bits: int = 40) -> Fraction:
    """Largest dyadic ``r = m / 2**bits`` with ``r*r <= x``."""
    if x < 0:
        raise ValueError("negative argument")
    scale = 1 << (2 * bits)
    m = math.isqrt((x.numerator * scale) // x.denominator)
    return Fraction(m, 1 << bits)


def snap_inside(p, accept, max_bits: int = 64) -> "Point":
    """Coarsest dyadic rounding of ``p`` that ``accept`` still takes; ``p`` itself
    when nothing coarser works.  Keeps denominators small under repetition."""
    p = P(p)
    for bits in range(0, max_bits + 1, 2):
        s = 1 << bits
        q = Point(Fraction(round(p[0] * s), s), Fraction(round(p[1] * s), s))
        if accept(q):
            return q
    return p


def simplest_dyadic(lo, hi, lo_open: bool = True, hi_open: bool = True) -> Fraction:
    """Dyadic rational with the smallest denominator in the interval.
    ``None`` bounds are infinite."""
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(math.floor(hi) - 1)
    if hi is None:
        return Fraction(math.ceil(lo) + 1)
    if lo == hi:
        if lo_open or hi_open:
            raise EmptyRegion("empty interval")
        return Fraction(lo)
    bits = 0
    while True:
        s = 1 << bits
        k = math.ceil(lo * s)
        if Fraction(k, s) == lo and lo_open:
            k += 1
        c = Fraction(k, s)
        if c < hi or (c == hi and not hi_open):
            return c
        bits += 1


def sqrt_ceil(x: Fraction, bits: int = 40) -> Fraction:
    r = sqrt_floor(x, bits)
    if r * r == x:
        return r
    return r + Fraction(1, 1 << bits)


# ---------------------------------------------------------------------------
# wedges and convex regions

@dataclass(frozen=True)
class Wedge:
    apex: Point
    ray1: Vector
    ray2: Vector

    def __post_init__(self):
        if Vector(*self.ray1).is_zero() or Vector(*self.ray2).is_zero():
            raise ValueError("wedge rays must be nonzero")
        if cross(self.ray1, self.ray2) < 0:
            raise ValueError("wedge wider than a half-plane")

    def contains(self, p, strict: bool = False) -> bool:
        v = P(p) - self.apex
        c1 = cross(self.ray1, v)
        c2 = cross(v, self.ray2)
        if strict:
            return c1 > 0 and c2 > 0
        return c1 >= 0 and c2 >= 0


def _dedupe(vertices, flags):
    out_v, out_f = [], []
    for v, f in zip(vertices, flags):
        if out_v and out_v[-1] == v:
            # the zero-length edge carries no information; keep the later edge
            out_f[-1] = f
            continue
        out_v.append(v)
        out_f.append(f)
    while len(out_v) > 1 and out_v[0] == out_v[-1]:
        out_v.pop()
        out_f.pop()
    return out_v, out_f


@dataclass(frozen=True)
class ConvexRegion:
    """Convex polygon given by its closure plus per-edge open flags.

    Edge ``i`` runs from ``vertices[i]`` to ``vertices[i+1]``.  A point on an
    open edge (including its endpoints) is excluded.  An empty vertex tuple is
    the empty region.
    """

    vertices: tuple = ()
    open_edges: tuple = ()

    @classmethod
    def closed(cls, vertices) -> "ConvexRegion":
        vs = tuple(P(v) for v in vertices)
        return cls(vs, (False,) * len(vs))

    @classmethod
    def open(cls, vertices) -> "ConvexRegion":
        vs = tuple(P(v) for v in vertices)
        return cls(vs, (True,) * len(vs))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def area2(self) -> Fraction:
        vs = self.vertices
        return sum((cross(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))), Fraction(0))

    def interior(self) -> "ConvexRegion":
        return ConvexRegion(self.vertices, (True,) * len(self.vertices))

    def contains(self, p, strict: bool = False) -> bool:
        vs = self.vertices
        n = len(vs)
        if n == 0:
            return False
        if n == 1:
            return not strict and not any(self.open_edges) and vs[0] == tuple(p)
        if self.area2() == 0:
            if strict or any(self.open_edges):
                return False
            lo = min(vs)
            hi = max(vs)
            return area2(lo, hi, p) == 0 and lo <= tuple(p) <= hi
        for i in range(n):
            c = area2(vs[i], vs[(i + 1) % n], p)
            if c < 0 or (c == 0 and (strict or self.open_edges[i])):
                return False
        return True

    def representative(self) -> Point:
        """Vertex centroid: an interior point whenever the area is positive."""
        if self.is_empty:
            raise EmptyRegion("empty region has no representative")
        return centroid(self.vertices)

    def clip(self, normal, offset, open_: bool) -> "ConvexRegion":
        """Intersect with ``{x : dot(normal, x) > offset}`` (``>=`` if closed)."""
        vs = self.vertices
        n = len(vs)
        if n == 0:
            return self
        vals = [dot(normal, v) - offset for v in vs]
        if all(v > 0 for v in vals):
            return self
        out_v, out_f = [], []
        for i in range(n):
            j = (i + 1) % n
            pi, pj = vs[i], vs[j]
            si, sj = vals[i], vals[j]
            if si >= 0:
                out_v.append(pi)
                # pi -> (pj or crossing) is part of edge i, except when pi sits
                # on the line and pj is cut: then the next edge runs along it
                out_f.append(open_ if (si == 0 and sj < 0) else self.open_edges[i])
            if si > 0 and sj < 0:
                out_v.append(lerp(pi, pj, si / (si - sj)))
                out_f.append(open_)
            elif si < 0 and sj > 0:
                out_v.append(lerp(pi, pj, si / (si - sj)))
                out_f.append(self.open_edges[i])
        if not out_v:
            return ConvexRegion()
        # an edge lying on the cutting line is on the new boundary
        m = len(out_v)
        for i in range(m):
            a, b = out_v[i], out_v[(i + 1) % m]
            if dot(normal, a) - offset == 0 and dot(normal, b) - offset == 0 and a != b:
                out_f[i] = out_f[i] or open_
        out_v, out_f = _dedupe(out_v, out_f)
        region = ConvexRegion(tuple(out_v), tuple(out_f))
        if open_ and region.area2() == 0:
            # a degenerate remainder touching an open line is empty
            if all(dot(normal, v) - offset == 0 for v in out_v) or any(out_f):
                return ConvexRegion()
        if region.area2() == 0 and any(out_f):
            return ConvexRegion()
        return region

    def clip_left_of(self, p, q, open_: bool = False) -> "ConvexRegion":
        """Keep the part left of the directed line p→q."""
        p, q = P(p), P(q)
        d = q - p
        normal = (-d[1], d[0])
        return self.clip(normal, dot(normal, p), open_)

    def intersect(self, other: "ConvexRegion") -> "ConvexRegion":
        region = self
        vs = other.vertices
        n = len(vs)
        if other.is_empty:
            return ConvexRegion()
        if n < 3 or other.area2() == 0:
            raise ValueError("intersection with a degenerate region is not supported")
        for i in range(n):
            region = region.clip_left_of(vs[i], vs[(i + 1) % n], other.open_edges[i])
        return region


def polygon_area2(polygon: Sequence) -> Fraction:
    n = len(polygon)
    return sum((cross(polygon[i], polygon[(i + 1) % n]) for i in range(n)), Fraction(0))


def segments_intersect(p1, p2, q1, q2) -> bool:
    """Closed segments p1p2 and q1q2 share a point."""
    d1 = area2(q1, q2, p1)
    d2 = area2(q1, q2, p2)
    d3 = area2(p1, p2, q1)
    d4 = area2(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return ((d1 == 0 and on_seg(q1, q2, p1)) or (d2 == 0 and on_seg(q1, q2, p2))
            or (d3 == 0 and on_seg(p1, p2, q1)) or (d4 == 0 and on_seg(p1, p2, q2)))


def is_simple_polygon(polygon: Sequence) -> bool:
    n = len(polygon)
    if n < 3 or len(set(map(tuple, polygon))) != n:
        return False
    for i in range(n):
        a, b = polygon[i], polygon[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or j == (i + 1) % n:
                continue
            if segments_intersect(a, b, polygon[j], polygon[(j + 1) % n]):
                return False
    if polygon_area2(polygon) == 0:
        return False
    return True


def kernel(polygon: Sequence, check_simple: bool = True) -> ConvexRegion:
    """Closed kernel of a simple counterclockwise polygon (possibly empty)."""
    pts = [P(p) for p in polygon]
    if check_simple and not is_simple_polygon(pts):
        raise NotSimple("polygon edges intersect")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    region = ConvexRegion.closed([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
    n = len(pts)
    for i in range(n):
        region = region.clip_left_of(pts[i], pts[(i + 1) % n])
        if region.is_empty:
            break
    return region


def in_open_kernel(x, polygon: Sequence, skip_vertex: Optional[int] = None) -> bool:
    """``x`` is strictly left of every edge not incident to ``polygon[skip_vertex]``.

    With ``skip_vertex`` set this is the test that the fan from that polygon
    vertex is a valid triangulation with positively oriented triangles.
    """
    n = len(polygon)
    for i in range(n):
        j = (i + 1) % n
        if skip_vertex is not None and (i == skip_vertex or j == skip_vertex):
            continue
        if area2(polygon[i], polygon[j], x) <= 0:
            return False
    return True


def off_lines(x, pts: Sequence) -> bool:
    """``x`` is not collinear with any two of ``pts``."""
    pts = list(pts)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if area2(pts[i], pts[j], x) == 0:
                return False
    return True


# ---------------------------------------------------------------------------
# quadratics in time

@dataclass(frozen=True)
class QuadraticPoly:
    a2: Fraction
    a1: Fraction
    a0: Fraction

    def __call__(self, t) -> Fraction:
        return (self.a2 * t + self.a1) * t + self.a0

    @property
    def coefficients(self) -> tuple:
        return (self.a2, self.a1, self.a0)


def area_quadratic(a0, a1, b0, b1, c0, c1) -> QuadraticPoly:
    """Signed area of a triangle whose corners move linearly, as a polynomial in t."""
    a0, a1, b0, b1, c0, c1 = (P(v) for v in (a0, a1, b0, b1, c0, c1))
    u0 = (b0[0] - a0[0], b0[1] - a0[1])
    v0 = (c0[0] - a0[0], c0[1] - a0[1])
    du = (b1[0] - a1[0] - u0[0], b1[1] - a1[1] - u0[1])
    dv = (c1[0] - a1[0] - v0[0], c1[1] - a1[1] - v0[1])
    half = Fraction(1, 2)
    return QuadraticPoly(cross(du, dv) * half,
                         (cross(u0, dv) + cross(du, v0)) * half,
                         cross(u0, v0) * half)


@dataclass(frozen=True)
class RootOf:
    """The ``index``-th (0 = smaller) real root of an irrational-root quadratic."""

    poly: QuadraticPoly
    index: int

    def __float__(self) -> float:
        a2, a1, a0 = (float(c) for c in self.poly.coefficients)
        disc = math.sqrt(max(a1 * a1 - 4 * a2 * a0, 0.0))
        roots = sorted(((-a1 - disc) / (2 * a2), (-a1 + disc) / (2 * a2)))
        return roots[self.index]

    def __str__(self) -> str:
        a2, a1, a0 = self.poly.coefficients
        return f"root#{self.index} of ({a2})t^2 + ({a1})t + ({a0}) ~ {float(self):.6g}"


Witness = Union[Fraction, RootOf]


@dataclass(frozen=True)
class Positivity:
    ok: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.ok


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _root_minus(a2, a1, disc, s, c) -> int:
    """Sign of ``(-a1 + s*sqrt(disc)) / (2*a2) - c`` for rational ``c``."""
    m = a1 + 2 * a2 * c
    if s > 0:
        num = 1 if m < 0 else _sign(disc - m * m)
    else:
        num = -1 if m > 0 else -_sign(disc - m * m)
        if m == 0:
            num = -_sign(disc)
    return num * _sign(a2)


def quadratic_roots(q: QuadraticPoly) -> list:
    """Distinct real roots in increasing order (Fractions or RootOf)."""
    a2, a1, a0 = q.coefficients
    if a2 == 0:
        if a1 == 0:
            return []
        return [-a0 / a1]
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    if disc == 0:
        return [-a1 / (2 * a2)]
    rn, rd = disc.numerator, disc.denominator
    sn, sd = math.isqrt(rn), math.isqrt(rd)
    if sn * sn == rn and sd * sd == rd:
        r = Fraction(sn, sd)
        return sorted([(-a1 - r) / (2 * a2), (-a1 + r) / (2 * a2)])
    lo, hi = (-1, 1) if a2 > 0 else (1, -1)
    return [_IrrationalRoot(q, 0, lo, disc), _IrrationalRoot(q, 1, hi, disc)]


class _IrrationalRoot:
    def __init__(self, q, index, s, disc):
        self.q, self.index, self.s, self.disc = q, index, s, disc

    def compare(self, c) -> int:
        return _root_minus(self.q.a2, self.q.a1, self.disc, self.s, c)

    def as_witness(self) -> RootOf:
        return RootOf(self.q, self.index)


def strictly_positive_on_01(q: QuadraticPoly) -> Positivity:
    """Decide ``q(t) > 0`` for every ``t`` in ``[0, 1]`` exactly."""
    if q(0) <= 0:
        return Positivity(False, Fraction(0))
    for r in quadratic_roots(q):
        if isinstance(r, Fraction):
            if 0 < r <= 1:
                return Positivity(False, r)
        elif r.compare(0) > 0 and r.compare(1) <= 0:
            return Positivity(False, r.as_witness())
    return Positivity(True)


def positive_interval_first(polys, lo=Fraction(0), hi=Fraction(1)):
    """First maximal open subinterval of ``(lo, hi)`` on which all polys are positive.

    Returns ``(left, right)`` as Fractions or floats for irrational ends, or
    ``None``.  Used for parameter selection, where the caller re-checks the
    chosen rational exactly.
    """
    cuts = {float(lo), float(hi)}
    for q in polys:
        for r in quadratic_roots(q):
            v = float(r.as_witness()) if isinstance(r, _IrrationalRoot) else float(r)
            if float(lo) < v < float(hi):
                cuts.add(v)
    pts = sorted(cuts)
    for left, right in zip(pts, pts[1:]):
        mid = Fraction((left + right) / 2).limit_denominator(1 << 40)
        if not (lo < mid < hi):
            continue
        if all(q(mid) > 0 for q in polys):
            return left, right
    return None


# ---------------------------------------------------------------------------
# slabs

@dataclass(frozen=True)
class SlabInterval:
    """Points whose value ``cross(direction, x)`` lies in the interval.

    ``cross(direction, x)`` is the signed distance along the left normal of
    ``direction``, scaled by ``|direction|``.  ``None`` bounds are infinite.
    """

    direction: Vector
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if Vector(*self.direction).is_zero():
            raise ValueError("slab direction must be nonzero")
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError("slab bounds out of order")

    def value(self, p) -> Fraction:
        return cross(self.direction, p)

    def contains_value(self, v) -> bool:
        if self.lo is not None and (v < self.lo or (v == self.lo and self.lo_open)):
            return False
        if self.hi is not None and (v > self.hi or (v == self.hi and self.hi_open)):
            return False
        return True

    def contains(self, p) -> bool:
        return self.contains_value(self.value(p))


def truncate(region: ConvexRegion, slab: SlabInterval) -> ConvexRegion:
    d = slab.direction
    normal = (-d[1], d[0])  # dot(normal, x) == cross(d, x)
    out = region
    if slab.lo is not None:
        out = out.clip(normal, slab.lo, slab.lo_open)
    if slab.hi is not None:
        out = out.clip((-normal[0], -normal[1]), -slab.hi, slab.hi_open)
    return out


def project_onto_normal(region: ConvexRegion, direction) -> SlabInterval:
    if region.is_empty:
        raise EmptyRegion("cannot project an empty region")
    direction = Vector(Q(direction[0]), Q(direction[1]))
    if direction.is_zero():
        raise ValueError("direction must be nonzero")
    vs = region.vertices
    n = len(vs)
    vals = [cross(direction, v) for v in vs]
    flags = region.open_edges

    def attained(target):
        for i in range(n):
            if vals[i] != target:
                continue
            # vertex i belongs to the region iff both incident edges are closed
            if not flags[i] and not flags[i - 1]:
                return True
            j = (i + 1) % n
            if n > 1 and vals[j] == target and not flags[i] and vs[i] != vs[j]:
                return True
        return False

    lo, hi = min(vals), max(vals)
    return SlabInterval(direction, lo, hi, not attained(lo), not attained(hi))


def line_chord(region: ConvexRegion, p, direction):
    """Parameter interval ``{t : p + t*direction in region}``.

    Returns ``(lo, hi, lo_open, hi_open)`` or ``None`` when empty; ``region``
    must have positive area.
    """
    vs = region.vertices
    n = len(vs)
    lo, hi = None, None
    lo_open = hi_open = False
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        g0 = area2(a, b, p)
        g1 = cross(b - a, direction)
        strict = region.open_edges[i]
        if g1 == 0:
            if g0 < 0 or (g0 == 0 and strict):
                return None
            continue
        t = -g0 / g1
        if g1 > 0:
            if lo is None or t > lo:
                lo, lo_open = t, strict
            elif t == lo:
                lo_open = lo_open or strict
        else:
            if hi is None or t < hi:
                hi, hi_open = t, strict
            elif t == hi:
                hi_open = hi_open or strict
    if lo is None or hi is None:
        raise ValueError("chord of an unbounded region")
    if lo > hi or (lo == hi and (lo_open or hi_open)):
        return None
    return lo, hi, lo_open, hi_open
