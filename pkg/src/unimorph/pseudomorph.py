"""Pseudo-morph construction by contracting low-degree vertices.

Every emitted linear step moves its vertices parallel to one vector.  The
builder certifies its own output before returning it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import geom
from .errors import (BuildFailure, InvalidEndpoint, Misclassified, MorphError,
                     NoFeasibleParameter, OrientationReversed, TargetSelectionExhausted,
                     TopologyMismatch, Unhandled)
from .geom import Point, area2
from .morph import Linear, Morph, Nested, PseudoMorph, linear_events, reverse
from .triangulation import (Drawing, contract, creates_multi_edge, fan_valid,
                            kernel_point, new_edges, topologically_equivalent, uncontract,
                            validate_drawing)
from .verify import verify_pseudo_morph, verify_step

EMPTY = PseudoMorph(())


# ---------------------------------------------------------------------------
# boundary normalization

Matrix = tuple  # ((a, b), (c, d))

IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def mat_mul(m, n) -> Matrix:
    return ((m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
            (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]))


def x_map(p, q) -> Matrix:
    """Moves points horizontally only; orientation-preserving when p > 0."""
    return ((Fraction(p), Fraction(q)), (Fraction(0), Fraction(1)))


def y_map(r, s) -> Matrix:
    return ((Fraction(1), Fraction(0)), (Fraction(r), Fraction(s)))


def _two_factors(a, b, c, d):
    """Factor [[a,b],[c,d]] as two axis maps, or return None."""
    det = a * d - b * c
    if a > 0:
        return [x_map(a, b), y_map(c / a, det / a)]
    if d > 0:
        return [y_map(c, d), x_map(det / d, b / d)]
    return None


ROT90 = [x_map(1, -1), y_map(1, 1), x_map(1, -1)]
ROT270 = [x_map(1, 1), y_map(-1, 1), x_map(1, 1)]


def affine_factors(A: Matrix) -> list:
    """Axis maps ``[M1, M2, ...]`` with ``A == ... M2 M1``; at most six.

    Each factor changes one coordinate only, so interpolating it moves every
    point parallel to one axis.
    """
    (a, b), (c, d) = [[Fraction(x) for x in row] for row in A]
    det = a * d - b * c
    if det <= 0:
        raise OrientationReversed("aligning map reverses orientation")
    found = _two_factors(a, b, c, d)
    if found is None:
        # A = R B with R a quarter turn made of three shears
        b90 = ((c, d), (-a, -b))          # R90^-1 A
        b270 = ((-c, -d), (a, b))         # R270^-1 A
        found = _two_factors(*b90[0], *b90[1])
        if found is not None:
            found = found + ROT90
        else:
            found = _two_factors(*b270[0], *b270[1])
            if found is not None:
                found = found + ROT270
        if found is None:
            # a, d < 0 and b = c = 0: R90 times [[0, d], [-a, 0]]
            alpha, delta = -a, -d
            found = [x_map(alpha, -1), y_map(1, 1), x_map(delta, -delta)] + ROT90
    found = [m for m in found if m != IDENTITY]
    prod = IDENTITY
    for m in found:
        prod = mat_mul(m, prod)
    assert prod == ((a, b), (c, d)), "factorization mismatch"
    return found


def apply_affine(A: Matrix, t, p) -> Point:
    return Point(A[0][0] * p[0] + A[0][1] * p[1] + t[0], A[1][0] * p[0] + A[1][1] * p[1] + t[1])


def aligning_map(d1: Drawing, d2: Drawing):
    """(A, t) with A x + t sending d2's boundary onto d1's boundary."""
    z = d1.triangulation.boundary
    p0, p1, p2 = (d1[v] for v in z)
    q0, q1, q2 = (d2[v] for v in z)
    u1, u2 = q1 - q0, q2 - q0
    w1, w2 = p1 - p0, p2 - p0
    det = geom.cross(u1, u2)
    if det == 0:
        raise InvalidEndpoint("degenerate boundary triangle")
    # A [u1 u2] = [w1 w2]  =>  A = W U^-1
    inv = ((u2[1] / det, -u2[0] / det), (-u1[1] / det, u1[0] / det))
    W = ((w1[0], w2[0]), (w1[1], w2[1]))
    A = mat_mul(W, inv)
    t = (p0[0] - (A[0][0] * q0[0] + A[0][1] * q0[1]), p0[1] - (A[1][0] * q0[0] + A[1][1] * q0[1]))
    return A, t


def normalize_boundary(d1: Drawing, d2: Drawing):
    """Return ``(prefix, aligned)``: a morph from d2 to a drawing whose
    boundary coincides with d1's, made of unidirectional affine steps."""
    A, t = aligning_map(d1, d2)
    if A[0][0] * A[1][1] - A[0][1] * A[1][0] <= 0:
        raise OrientationReversed("d2 is a mirror image of d1's boundary")
    frames = [dict(d2.coords)]
    tags = []
    cur = dict(d2.coords)
    for m in affine_factors(A):
        cur = {v: apply_affine(m, (0, 0), p) for v, p in cur.items()}
        frames.append(cur)
        tags.append("normalize: axis map")
    if t[0] != 0 or t[1] != 0:
        cur = {v: Point(p[0] + t[0], p[1] + t[1]) for v, p in cur.items()}
        frames.append(cur)
        tags.append("normalize: translate")
    prefix = Morph(d2.triangulation, tuple(frames), tuple(tags))
    return prefix, Drawing(d2.triangulation, cur)


# ---------------------------------------------------------------------------
# 4-gon convexification

@dataclass(frozen=True)
class ConvexifyTask:
    quad: tuple                      # counterclockwise a, b, c, d
    forbidden_chords: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "quad", tuple(self.quad))
        object.__setattr__(self, "forbidden_chords",
                           frozenset(frozenset(c) for c in self.forbidden_chords))

    def creates_forbidden(self, edges) -> bool:
        return any(frozenset(e) in self.forbidden_chords for e in edges)


@dataclass(frozen=True)
class Region:
    """A triangle of the drawing treated as the boundary of a sub-problem."""

    corners: tuple
    interior: frozenset

    @classmethod
    def whole(cls, d: Drawing) -> "Region":
        tri = d.triangulation
        return cls(tuple(tri.boundary), frozenset(tri.internal_vertices))

    def degree(self, tri, z) -> int:
        inside = self.interior | set(self.corners)
        return sum(1 for u in tri.rotation[z] if u in inside)

    def without(self, v) -> "Region":
        return Region(self.corners, self.interior - {v})


class ProblematicType(enum.Enum):
    TYPE1 = "boundary"
    TYPE2 = "quad vertex"
    TYPE3 = "would create chord"
    FREE = "free"


def quad_convex(d: Drawing, quad) -> bool:
    pts = [d[v] for v in quad]
    return all(area2(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]) > 0 for i in range(4))


def _free_target(d: Drawing, task: ConvexifyTask, v):
    """A ring vertex ``v`` may be contracted to without harm, or None."""
    tri = d.triangulation
    if tri.degree(v) > 5:
        return None
    for w in tri.rotation[v]:
        if creates_multi_edge(tri, v, w):
            continue
        if task.creates_forbidden((w, x) for x in new_edges(tri, v, w)):
            continue
        if fan_valid(d, v, w):
            return w
    return None


def classify_problematic(d: Drawing, task: ConvexifyTask, v, region: Optional[Region] = None) -> ProblematicType:
    region = region or Region.whole(d)
    tri = d.triangulation
    if v in region.corners or tri.is_boundary(v):
        return ProblematicType.TYPE1
    if v in task.quad:
        return ProblematicType.TYPE2
    nbrs = set(tri.rotation[v])
    if tri.degree(v) <= 5:
        for chord in task.forbidden_chords:
            x, y = tuple(chord)
            if x in nbrs and y in nbrs and (fan_valid(d, v, x) or fan_valid(d, v, y)):
                return ProblematicType.TYPE3
    return ProblematicType.FREE


def _quad_polys(quad, pos0, pos1):
    out = []
    for i in range(4):
        a, b, c = quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4]
        out.append(geom.area_quadratic(pos0[a], pos1[a], pos0[b], pos1[b], pos0[c], pos1[c]))
    return out


def _face_polys(d: Drawing, moved, pos0, pos1):
    tri = d.triangulation
    faces = set()
    for v in moved:
        faces.update(tri.faces_by_vertex[v])
    out = []
    for f in faces:
        a, b, c = f
        out.append(geom.area_quadratic(pos0[a], pos1[a], pos0[b], pos1[b], pos0[c], pos1[c]))
    return out


def _tracked_positions(d: Drawing, mover, target, followers, triangle):
    """Endpoint positions (s = 0 and s = 1) of the mover and its followers."""
    target = geom.P(target)
    bary = {f: geom.barycentric(d[f], *(d[v] for v in triangle)) for f in followers}
    pos0 = dict(d.coords)
    pos1 = dict(d.coords)
    pos1[mover] = target
    corners1 = [pos1[v] for v in triangle]
    for f, w in bary.items():
        pos1[f] = geom.combination(w, corners1)
    return pos0, pos1, bary


def convexify_parameter(d: Drawing, mover, target, followers, triangle, quad) -> Fraction:
    """Rational s in (0, 1) such that moving ``mover`` a fraction s of the way
    to ``target``, with ``followers`` fixed in barycentric coordinates of
    ``triangle``, keeps every face positive and makes ``quad`` convex."""
    pos0, pos1, _ = _tracked_positions(d, mover, target, followers, triangle)
    moved = {mover} | set(followers)
    polys = _face_polys(d, moved, pos0, pos1) + _quad_polys(quad, pos0, pos1)
    if all(q(Fraction(0)) > 0 for q in polys):
        return Fraction(0)
    iv = geom.positive_interval_first(polys, Fraction(0), Fraction(1))
    if iv is None:
        raise NoFeasibleParameter(f"moving {mover!r} toward its target never convexifies {quad}")
    lo, hi = (Fraction(x) if not isinstance(x, Fraction) else x for x in iv)
    s = ((lo + hi) / 2).limit_denominator(1 << 20)
    if not (0 < s < 1 and all(q(s) > 0 for q in polys)):
        s = (lo + hi) / 2
        if not (0 < s < 1 and all(q(s) > 0 for q in polys)):
            raise NoFeasibleParameter("feasible interval too thin to certify")
    return s


def tracked_step(d: Drawing, mover, target, followers, triangle, quad, tag: str):
    """One unidirectional step moving ``mover`` toward ``target``; followers
    keep their barycentric coordinates.  Returns (event, new drawing)."""
    s = convexify_parameter(d, mover, target, followers, triangle, quad)
    if s == 0:
        return None, d
    dest = geom.lerp(d[mover], geom.P(target), s)
    pos0, pos1, bary = _tracked_positions(d, mover, dest, followers, triangle)
    new = Drawing(d.triangulation, pos1)
    for f, w in bary.items():
        assert geom.barycentric(new[f], *(new[v] for v in triangle)) == w
    rep = verify_step(d, new)
    if not rep.certified:
        raise BuildFailure(f"tracked step for {mover!r} failed: {rep.failure}")
    return Linear(d.coords, new.coords, tag), new


def _other_corner_targets(d, quad, triangle, mover, first):
    out = [first]
    for z in triangle:
        if z not in out and z != mover:
            out.append(z)
    return out


def case_a(d: Drawing, task: ConvexifyTask, z1, region: Optional[Region] = None, depth: int = 0):
    """Handle a region corner of degree 3.  Returns (events, drawing)."""
    region = region or Region.whole(d)
    tri = d.triangulation
    corners = region.corners
    i = corners.index(z1)
    z2, z3 = corners[(i + 1) % 3], corners[(i + 2) % 3]
    inner = [u for u in tri.rotation[z1] if u in region.interior]
    if region.degree(tri, z1) != 3 or len(inner) != 1:
        raise Misclassified(f"{z1!r} does not have degree 3 in the region")
    y = inner[0]
    if not (tri.has_edge(y, z2) and tri.has_edge(y, z3)):
        raise Misclassified(f"{y!r} is not adjacent to both other corners")
    T = (y, z2, z3)
    # z1 has no other inner neighbour, so everything else lies inside T
    inside = set(region.interior) - {y}
    if set(task.quad) <= set(T) | inside:
        return convexify4gon(d, task, Region(T, frozenset(inside)), depth + 1)
    if z1 not in task.quad or y not in task.quad:
        raise Misclassified("4-gon meets the degree-3 corner without its neighbour")
    # y toward z1 first; the free corner is the fallback
    last = None
    for target in _other_corner_targets(d, task.quad, corners, y, z1):
        try:
            kind = "corner" if target == z1 else "fallback"
            ev, new = tracked_step(d, y, d[target], inside, T, task.quad,
                                   f"case A {kind}: {y} toward {target}")
        except (NoFeasibleParameter, BuildFailure) as exc:
            last = exc
            continue
        if quad_convex(new, task.quad):
            return PseudoMorph(() if ev is None else (ev,)), new
    raise NoFeasibleParameter(f"case A could not convexify {task.quad}: {last}")


def _case_b_triangle(d: Drawing, region: Region):
    tri = d.triangulation
    z = region.corners
    ys = []
    for i in range(3):
        zj, zk = z[(i + 1) % 3], z[(i + 2) % 3]
        common = [u for u in tri.rotation[zj] if u in region.interior and tri.has_edge(u, zk)]
        if len(common) != 1:
            raise Misclassified(f"corners {zj!r}, {zk!r} do not share exactly one inner neighbour")
        ys.append(common[0])
    return tuple(ys)


def case_b(d: Drawing, task: ConvexifyTask, region: Optional[Region] = None, depth: int = 0):
    """Handle a region whose three corners all have degree 4."""
    region = region or Region.whole(d)
    tri = d.triangulation
    z = region.corners
    if any(region.degree(tri, v) != 4 for v in z):
        raise Misclassified("not every corner has degree 4")
    ys = _case_b_triangle(d, region)
    T = ys
    # the six faces between the corners and T hold no vertices
    inside = set(region.interior) - set(ys)
    if set(task.quad) <= set(T) | inside:
        return convexify4gon(d, task, Region(T, frozenset(inside)), depth + 1)
    qset = set(task.quad)
    candidates = []
    outer = [v for v in task.quad if v in z]
    if len(outer) == 2:
        # quad z_j z_i y_j y_k style: move the y of the shared corner's side toward it
        zi, zj = outer
        diag_z = zi if all(tri.has_edge(zi, u) for u in task.quad if u != zi) else zj
        i = z.index(diag_z)
        others = [k for k in range(3) if k != i]
        for k in others:
            if ys[k] in qset:
                candidates.append((ys[k], diag_z))
    elif len(outer) == 1:
        i = z.index(outer[0])
        for k in range(3):
            if k != i:
                candidates.append((ys[i], z[k]))
    for k in range(3):
        for zz in z:
            if (ys[k], zz) not in candidates:
                candidates.append((ys[k], zz))
    last = None
    for mover, target in candidates:
        try:
            ev, new = tracked_step(d, mover, d[target], inside, T, task.quad,
                                   f"case B: {mover} toward {target}")
        except (NoFeasibleParameter, BuildFailure) as exc:
            last = exc
            continue
        if quad_convex(new, task.quad):
            return PseudoMorph(() if ev is None else (ev,)), new
    raise NoFeasibleParameter(f"case B could not convexify {task.quad}: {last}")


def _single_vertex_move(d: Drawing, task: ConvexifyTask, region: Region):
    """Move one inner quad vertex inside its own link kernel so the quad
    becomes convex.  Returns (event, drawing) or None."""
    tri = d.triangulation
    q = task.quad
    for i, v in enumerate(q):
        if v not in region.interior:
            continue
        ring = tri.rotation[v]
        reg = geom.kernel([d[u] for u in ring], check_simple=False).interior()
        a, b, opp = d[q[(i - 1) % 4]], d[q[(i + 1) % 4]], d[q[(i + 2) % 4]]
        # the three corners whose orientation depends on v
        reg = reg.clip_left_of(b, a, open_=True)
        reg = reg.clip_left_of(opp, a, open_=True)
        reg = reg.clip_left_of(b, opp, open_=True)
        if reg.is_empty or reg.area2() == 0:
            continue
        target = reg.representative()
        new = d.moved({v: target})
        if validate_drawing(new) or not quad_convex(new, q):
            continue
        rep = verify_step(d, new)
        if rep.certified:
            return Linear(d.coords, new.coords, f"single move: {v}"), new
    return None


def convexify4gon(d: Drawing, task: ConvexifyTask, region: Optional[Region] = None, depth: int = 0):
    """Make the 4-gon strictly convex.  Returns (pseudo-morph, final drawing)."""
    region = region or Region.whole(d)
    if depth > 4 * len(d.triangulation.vertices) + 8:
        raise Unhandled("convexification recursion did not terminate")
    if quad_convex(d, task.quad):
        return EMPTY, d
    tri = d.triangulation
    for v in sorted(region.interior, key=lambda u: (tri.degree(u), str(u))):
        if v in task.quad or tri.degree(v) > 5:
            continue
        w = _free_target(d, task, v)
        if w is None:
            continue
        reduced, rec = contract(d, v, w)
        inner, end = convexify4gon(reduced, task, region.without(v), depth + 1)
        reentry = kernel_point(end, rec.ring)
        after = uncontract(end, rec, reentry)
        return PseudoMorph((Nested(v, w, rec, inner, reentry, f"clear {v}"),)), after
    degs = [region.degree(tri, z) for z in region.corners]
    attempts = []
    if 3 in degs:
        attempts.append(lambda: case_a(d, task, region.corners[degs.index(3)], region, depth))
    elif all(x == 4 for x in degs):
        attempts.append(lambda: case_b(d, task, region, depth))
    last = None
    for go in attempts:
        try:
            return go()
        except (NoFeasibleParameter, Misclassified, Unhandled) as exc:
            last = exc
    moved = _single_vertex_move(d, task, region)
    if moved is not None:
        ev, new = moved
        return PseudoMorph((ev,)), new
    raise Unhandled(f"cannot convexify {task.quad} (corner degrees {degs}): {last}")


# ---------------------------------------------------------------------------
# contraction selection

@dataclass(frozen=True)
class Direct:
    p: object
    a: object


@dataclass(frozen=True)
class NeedsConvexify:
    p: object
    targets1: tuple      # simple targets valid in the first drawing
    targets2: tuple
    simple: tuple        # all targets that create no multi-edge


@dataclass(frozen=True)
class Exhausted:
    tried: tuple = ()


def _candidates(d1: Drawing):
    tri = d1.triangulation
    return sorted((v for v in tri.internal_vertices if tri.degree(v) <= 5),
                  key=lambda v: (tri.degree(v), str(v)))


def select_contraction(d1: Drawing, d2: Drawing, exclude=()):
    tri = d1.triangulation
    pending = []
    for p in _candidates(d1):
        if p in exclude:
            continue
        ring = tri.rotation[p]
        simple = tuple(a for a in ring if not creates_multi_edge(tri, p, a))
        if not simple:
            continue
        t1 = tuple(a for a in simple if fan_valid(d1, p, a))
        t2 = tuple(a for a in simple if fan_valid(d2, p, a))
        common = [a for a in t1 if a in t2]
        if common:
            return Direct(p, common[0])
        if len(ring) == 4:
            externals = [i for i in range(2) if tri.has_edge(ring[i], ring[i + 2])]
            assert len(externals) <= 1, "both diagonals of a degree-4 link are edges"
        pending.append(NeedsConvexify(p, t1, t2, simple))
    if pending:
        return pending[0]
    return Exhausted(tuple(_candidates(d1)))


def _pending(d1, d2):
    tri = d1.triangulation
    out = []
    for p in _candidates(d1):
        ring = tri.rotation[p]
        simple = tuple(a for a in ring if not creates_multi_edge(tri, p, a))
        if not simple:
            continue
        t1 = tuple(a for a in simple if fan_valid(d1, p, a))
        t2 = tuple(a for a in simple if fan_valid(d2, p, a))
        out.append(NeedsConvexify(p, t1, t2, simple))
    return out


def _round(d: Drawing, p, t, quad_of_ring):
    """Contract p to t, convexify a quad of the contracted fan, put p back."""
    reduced, rec = contract(d, p, t)
    task = ConvexifyTask(quad_of_ring, [(quad_of_ring[1], quad_of_ring[3])])
    inner, end = convexify4gon(reduced, task)
    reentry = kernel_point(end, rec.ring)
    after = uncontract(end, rec, reentry)
    return Nested(p, t, rec, inner, reentry, f"retarget {p}"), after


def retarget(d: Drawing, p, goal, simple):
    """Pseudo-morph from ``d`` to a drawing where contracting p to ``goal`` is valid."""
    tri = d.triangulation
    ring = list(tri.rotation[p])
    k = len(ring)
    valid = [a for a in simple if fan_valid(d, p, a)]
    if not valid:
        raise TargetSelectionExhausted(f"{p!r} has no valid simple target")
    if k == 4:
        t = valid[0]
        i = ring.index(t)
        quad = tuple(ring[(i + j) % 4] for j in range(4))
        ev, after = _round(d, p, t, quad)
        return PseudoMorph((ev,)), after
    # pentagon: one round moves the valid target two places along the ring
    allowed = set(simple)
    prev = {v: None for v in valid}
    queue = deque(valid)
    while queue:
        t = queue.popleft()
        if t == goal:
            break
        i = ring.index(t)
        for step in (2, 3):
            u = ring[(i + step) % 5]
            if u in allowed and u not in prev:
                prev[u] = t
                queue.append(u)
    if goal not in prev:
        raise TargetSelectionExhausted(f"no chain of rounds reaches target {goal!r} for {p!r}")
    path = [goal]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    events = []
    cur = d
    for t, u in zip(path, path[1:]):
        i = ring.index(t)
        if ring[(i + 2) % 5] == u:
            quad = (t, ring[(i + 2) % 5], ring[(i + 3) % 5], ring[(i + 4) % 5])
        else:
            quad = (t, ring[(i + 1) % 5], ring[(i + 2) % 5], ring[(i + 3) % 5])
        ev, cur = _round(cur, p, t, quad)
        events.append(ev)
        assert fan_valid(cur, p, u)
    return PseudoMorph(tuple(events)), cur


# ---------------------------------------------------------------------------
# the builder

@dataclass
class BuildStats:
    direct: int = 0
    retargeted: int = 0
    shortcuts: int = 0
    failures: list = field(default_factory=list)


def _build(d1: Drawing, d2: Drawing, stats: BuildStats) -> PseudoMorph:
    if d1.coords == d2.coords or len(d1.triangulation.vertices) == 3:
        return EMPTY
    if verify_step(d1, d2).certified:
        stats.shortcuts += 1
        return PseudoMorph((Linear(d1.coords, d2.coords, "linear"),))
    sel = select_contraction(d1, d2)
    if isinstance(sel, Direct):
        stats.direct += 1
        return _nested(d1, d2, sel.p, sel.a, stats)
    for need in _pending(d1, d2):
        p = need.p
        for a in need.simple:
            try:
                pre, post = EMPTY, EMPTY
                e1, e2 = d1, d2
                if a not in need.targets1:
                    pre, e1 = retarget(d1, p, a, need.simple)
                if a not in need.targets2:
                    back, e2 = retarget(d2, p, a, need.simple)
                    post = reverse(back)
                body = _nested(e1, e2, p, a, stats)
            except MorphError as exc:
                stats.failures.append(f"{p}->{a}: {exc}")
                continue
            stats.retargeted += 1
            return pre + body + post
    raise TargetSelectionExhausted("no low-degree vertex could be contracted in both drawings; "
                                   + "; ".join(stats.failures[-5:]))


def _nested(d1, d2, p, a, stats) -> PseudoMorph:
    r1, rec1 = contract(d1, p, a)
    r2, _ = contract(d2, p, a)
    inner = _build(r1, r2, stats)
    return PseudoMorph((Nested(p, a, rec1, inner, d2[p], f"contract {p}->{a}"),))


def build_pseudo_morph(d1: Drawing, d2: Drawing, stats: Optional[BuildStats] = None,
                       certify: bool = True) -> PseudoMorph:
    if not topologically_equivalent(d1, d2):
        raise TopologyMismatch("drawings must have the same faces and the same outer face")
    for name, d in (("first", d1), ("second", d2)):
        problems = validate_drawing(d)
        if problems:
            raise InvalidEndpoint(f"{name} drawing does not have the same faces and the same outer face: {problems[0]}")
    stats = stats if stats is not None else BuildStats()
    prefix, aligned = normalize_boundary(d1, d2)
    pm = _build(d1, aligned, stats) + reverse(linear_events(prefix))
    if certify:
        rep = verify_pseudo_morph(pm, d1)
        if not rep.certified:
            raise BuildFailure(f"built pseudo-morph failed verification: {rep.failures[0]}")
    return pm
