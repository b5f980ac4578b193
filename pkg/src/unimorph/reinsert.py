"""Turn a pseudo-morph into a true morph with the same number of steps.

Each contraction of ``p`` to ``a`` is replaced by a one-vertex step moving
``p`` to a placement near ``a``.  During the inner morph ``p`` rides along:
at a fixed convex combination for links of size 3 and 4, and through a
chain of nice points inside small sectors at ``a`` for links of size 5.
The uncontraction becomes a one-vertex step to the re-entry point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import geom
from .errors import (DegenerateWedge, EmptyNiceSet, NoIntersection, NonPositive,
                     ReinsertionFailure)
from .geom import ConvexRegion, Point, Wedge, area2
from .morph import (AnyDirection, Linear, Morph, NotUnidirectional,
                    PseudoMorph, direction_of_coords)
from .triangulation import Drawing, contract

SMALL_WEIGHTS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4))


class Sign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class Sidedness(enum.Enum):
    ONE_SIDED = "one-sided"
    TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class Sector:
    apex: Point
    radius: Fraction
    wedge: Wedge
    sign: Sign
    b: Point
    e: Point
    triangle: ConvexRegion
    reflected: Optional[tuple] = None  # (b', e') for negative sectors


@dataclass(frozen=True)
class NiceSet:
    region: ConvexRegion


@dataclass(frozen=True)
class ReinsertionPlan:
    positions: tuple
    epsilon: Fraction
    retries: int = 0


@dataclass
class FiveGonTrace:
    """What one 5-gon reinsertion computed; collected when tracing is on."""

    p: object
    a: object
    sectors: list
    nice: list
    plan: ReinsertionPlan
    directions: list = field(default_factory=list)


def _rotate_to(ring, a) -> tuple:
    i = ring.index(a)
    return tuple(ring[i:]) + tuple(ring[:i])


# ---------------------------------------------------------------------------

def relative_frame(m, a):
    """Translate every keyframe so ``a`` stays at its first position.

    Accepts a :class:`Morph` or a list of coordinate maps and returns the
    same kind.
    """
    frames = m.keyframes if isinstance(m, Morph) else m
    a0 = frames[0][a]
    out = []
    for f in frames:
        shift = (a0[0] - f[a][0], a0[1] - f[a][1])
        if shift == (0, 0):
            out.append(dict(f))
        else:
            out.append({v: Point(p[0] + shift[0], p[1] + shift[1]) for v, p in f.items()})
    if isinstance(m, Morph):
        return Morph(m.triangulation, tuple(out), m.provenance)
    return out


def reinsert_small(m, ring, a) -> list:
    """Positions for ``p`` in every keyframe when its link has 3 or 4 vertices."""
    frames = m.keyframes if isinstance(m, Morph) else m
    r = _rotate_to(tuple(ring), a)
    if len(r) == 3:
        return [geom.combination(SMALL_WEIGHTS, [f[r[0]], f[r[1]], f[r[2]]]) for f in frames]
    if len(r) == 4:
        return [geom.midpoint(f[r[0]], f[r[2]]) for f in frames]
    raise ValueError("reinsert_small handles links of size 3 or 4")


def compute_epsilon(frames, ring, a, bits: int = 24) -> Fraction:
    """Rational radius no larger than the distance from ``a`` to any
    non-incident ring edge line at any time of the (a-fixed) morph.

    Between keyframes the edge moves parallel to the step direction, so the
    doubled area of (edge, a) is linear in t and the squared edge length is
    convex; endpoint values therefore bound the whole step.
    """
    frames = frames.keyframes if isinstance(frames, Morph) else frames
    r = _rotate_to(tuple(ring), a)
    edges = [(r[j], r[j + 1]) for j in range(1, len(r) - 1)]

    def measures(f):
        out = []
        A = f[a]
        for u, w in edges:
            ar = area2(f[u], f[w], A)
            if ar <= 0:
                raise NonPositive(f"{a!r} is not strictly inside the kernel constraint of edge {u!r}-{w!r}")
            d = f[w] - f[u]
            out.append((ar * ar, geom.dot(d, d)))
        return out

    ms = [measures(f) for f in frames]
    best = None
    if len(ms) == 1:
        best = min(a2 / l2 for a2, l2 in ms[0])
    for m0, m1 in zip(ms, ms[1:]):
        for (a0, l0), (a1, l1) in zip(m0, m1):
            v = min(a0, a1) / max(l0, l1)
            if best is None or v < best:
                best = v
    eps = geom.sqrt_floor(best, bits)
    while eps == 0:
        bits *= 2
        eps = geom.sqrt_floor(best, bits)
    return eps


def _dyadic_floor(x: Fraction, bits: int = 30) -> Fraction:
    """Largest k / 2^b not above x, with b grown until the result is positive."""
    while True:
        s = 1 << bits
        y = Fraction(math.floor(x * s), s)
        if y > 0:
            return y
        bits += 8


def sector_at(frame, ring, a, eps) -> Sector:
    if eps <= 0:
        raise NonPositive("sector radius must be positive")
    r = _rotate_to(tuple(ring), a)
    A, B, E = frame[a], frame[r[1]], frame[r[-1]]
    o = area2(A, B, E)
    if o == 0:
        raise DegenerateWedge(f"{r[1]!r}, {a!r}, {r[-1]!r} are collinear")
    if o > 0:
        sign = Sign.POSITIVE
        r1, r2 = B - A, E - A
        reflected = None
    else:
        sign = Sign.NEGATIVE
        r1, r2 = A - E, A - B
        reflected = (Point(2 * A[0] - B[0], 2 * A[1] - B[1]), Point(2 * A[0] - E[0], 2 * A[1] - E[1]))
    # round the scale factors down to dyadics; a smaller sector is still safe
    t1 = _dyadic_floor(eps / geom.sqrt_ceil(geom.dot(r1, r1)))
    t2 = _dyadic_floor(eps / geom.sqrt_ceil(geom.dot(r2, r2)))
    tri = ConvexRegion.closed([A, A + r1.scale(t1), A + r2.scale(t2)])
    return Sector(A, eps, Wedge(A, r1, r2), sign, B, E, tri, reflected)


def classify_sided(sector: Sector, direction) -> Sidedness:
    sb = geom.cross(direction, sector.b - sector.apex)
    se = geom.cross(direction, sector.e - sector.apex)
    return Sidedness.ONE_SIDED if sb * se >= 0 else Sidedness.TWO_SIDED


def nice_sets(sectors, directions) -> list:
    """Backward sweep: the last set is the open sector; earlier ones are
    truncated by the slab of lines parallel to the step direction through
    the next set.  ``None`` directions mean the step is stationary relative
    to the apex."""
    k = len(sectors)
    if len(directions) != k - 1:
        raise ValueError("need one direction per step")
    out = [None] * k
    out[-1] = sectors[-1].triangle.interior()
    for i in range(k - 2, -1, -1):
        s = sectors[i].triangle.interior()
        d = directions[i]
        if d is None:
            region = s.intersect(out[i + 1])
        else:
            region = geom.truncate(s, geom.project_onto_normal(out[i + 1], d))
        if region.is_empty or region.area2() == 0:
            raise EmptyNiceSet(f"nice set {i} is empty")
        out[i] = region
    return [NiceSet(r) for r in out]


def thread_points(nice, directions, epsilon=Fraction(0), retries: int = 0) -> ReinsertionPlan:
    regions = [n.region if isinstance(n, NiceSet) else n for n in nice]
    first = regions[0]
    p = geom.snap_inside(first.representative(), first.contains)
    positions = [p]
    for i, d in enumerate(directions):
        nxt = regions[i + 1]
        if d is not None:
            chord = geom.line_chord(nxt, p, d)
            if chord is None or chord[0] == chord[1]:
                raise NoIntersection(f"line through position {i} misses nice set {i + 1}")
            # simplest parameter on the chord keeps coordinates small
            t = geom.simplest_dyadic(*chord)
            p = Point(p[0] + t * d[0], p[1] + t * d[1])
        if not nxt.contains(p):
            raise NoIntersection(f"position {i + 1} is not nice")
        positions.append(p)
    return ReinsertionPlan(tuple(positions), epsilon, retries)


# ---------------------------------------------------------------------------

def _check_placement(frames, ring, p, positions) -> Optional[str]:
    """Exact check of every face incident to ``p`` across all steps."""
    ring = tuple(ring)
    k = len(ring)
    for f, pos in zip(frames, positions):
        if not geom.in_open_kernel(pos, [f[v] for v in ring]):
            return "placement outside the open kernel"
    for i in range(len(frames) - 1):
        f0, f1 = frames[i], frames[i + 1]
        p0, p1 = positions[i], positions[i + 1]
        for j in range(k):
            u, w = ring[j], ring[(j + 1) % k]
            q = geom.area_quadratic(p0, p1, f0[u], f1[u], f0[w], f1[w])
            if not geom.strictly_positive_on_01(q):
                return f"face ({p!r}, {u!r}, {w!r}) degenerates during step {i}"
        disp = p1 - p0
        if not disp.is_zero():
            for v in ring:
                dv = f1[v] - f0[v]
                if not dv.is_zero() and not geom.parallel(dv, disp):
                    return f"step {i} is no longer unidirectional"
    return None


def _place_five(frames, ring, p, a, max_retries, trace):
    rel = relative_frame(list(frames), a)
    dirs = []
    for f0, f1 in zip(rel, rel[1:]):
        sub0 = {v: f0[v] for v in ring}
        sub1 = {v: f1[v] for v in ring}
        d = direction_of_coords(sub0, sub1)
        if isinstance(d, NotUnidirectional):
            raise ReinsertionFailure("inner morph step is not unidirectional")
        dirs.append(None if isinstance(d, AnyDirection) else d.vector)
    eps = compute_epsilon(rel, ring, a)
    a0 = frames[0][a]
    last = None
    for attempt in range(max_retries + 1):
        try:
            sectors = [sector_at(f, ring, a, eps) for f in rel]
            nice = nice_sets(sectors, dirs)
            plan = thread_points(nice, dirs, eps, attempt)
        except (EmptyNiceSet, NoIntersection) as exc:
            last = str(exc)
            eps /= 2
            continue
        positions = [Point(q[0] + f[a][0] - a0[0], q[1] + f[a][1] - a0[1])
                     for q, f in zip(plan.positions, frames)]
        problem = _check_placement(frames, ring, p, positions)
        if problem is None:
            if trace is not None:
                trace.append(FiveGonTrace(p, a, sectors, nice, plan, dirs))
            return positions
        last = problem
        eps /= 2
    raise ReinsertionFailure(f"5-gon reinsertion of {p!r} failed after {max_retries} retries: {last}")


def place(frames, ring, p, a, max_retries: int = 64, trace=None) -> list:
    """Positions of ``p`` in each keyframe of the reduced morph."""
    if len(ring) <= 4:
        positions = reinsert_small(frames, ring, a)
        problem = _check_placement(frames, ring, p, positions)
        if problem is not None:
            raise ReinsertionFailure(problem)
        return positions
    if len(ring) == 5:
        return _place_five(frames, ring, p, a, max_retries, trace)
    raise ReinsertionFailure(f"link of {p!r} has {len(ring)} vertices")


def convert(pm: PseudoMorph, start: Drawing, max_retries: int = 64, trace=None) -> Morph:
    frames, tags = _convert(pm, start, max_retries, trace)
    return Morph(start.triangulation, tuple(frames), tuple(tags))


def _convert(pm, d: Drawing, max_retries, trace):
    frames = [d.coords]
    tags = []
    cur = d
    for ev in pm.events:
        if isinstance(ev, Linear):
            frames.append(dict(ev.target))
            tags.append(ev.tag)
            cur = Drawing(cur.triangulation, ev.target)
            continue
        reduced, rec = contract(cur, ev.p, ev.a)
        inner, inner_tags = _convert(ev.inner, reduced, max_retries, trace)
        positions = place(inner, rec.ring, ev.p, ev.a, max_retries, trace)
        aug = []
        for f, q in zip(inner, positions):
            g = dict(f)
            g[ev.p] = q
            aug.append(g)
        frames.extend(aug)
        tags.append(f"contract {ev.p}->{ev.a}" + (f" ({ev.tag})" if ev.tag else ""))
        tags.extend(inner_tags)
        final = dict(aug[-1])
        final[ev.p] = geom.P(ev.reentry)
        frames.append(final)
        tags.append(f"uncontract {ev.p}" + (f" ({ev.tag})" if ev.tag else ""))
        cur = Drawing(rec.before, final)
    return frames, tags
