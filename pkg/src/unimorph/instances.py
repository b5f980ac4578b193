"""Random triangulations, Tutte drawings and random (pseudo-)morphs for tests."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Optional

import numpy as np

from . import geom
from .errors import MorphError
from .geom import Point
from .morph import Linear, Nested, PseudoMorph
from .triangulation import (Drawing, Triangulation, contract, creates_multi_edge, fan_valid,
                            generic_placement, kernel_point, uncontract, validate_drawing)
from .verify import verify_step

DEFAULT_OUTER = ((0, 0), (1024, 0), (512, 887))


def _insert_after(seq: list, anchor, new) -> None:
    seq.insert(seq.index(anchor) + 1, new)


def random_stacked(n: int, rng: random.Random) -> Triangulation:
    """Insert vertices one at a time into random faces."""
    if n < 3:
        raise ValueError("need at least 3 vertices")
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    faces = [(0, 1, 2)]
    for v in range(3, n):
        x, y, z = faces.pop(rng.randrange(len(faces)))
        rot[v] = [x, y, z]
        _insert_after(rot[x], y, v)
        _insert_after(rot[y], z, v)
        _insert_after(rot[z], x, v)
        faces += [(x, y, v), (y, z, v), (z, x, v)]
    tri = Triangulation({k: tuple(r) for k, r in rot.items()}, (0, 1, 2))
    tri.check()
    return tri


def random_flips(tri: Triangulation, k: int, rng: random.Random) -> Triangulation:
    """Apply up to ``k`` random edge flips that keep the graph simple."""
    rot = {v: list(r) for v, r in tri.rotation.items()}
    boundary = tuple(tri.boundary)
    for _ in range(k):
        cur = Triangulation({v: tuple(r) for v, r in rot.items()}, boundary)
        face_of = {}
        for f in cur.faces:
            for i in range(3):
                face_of[(f[i], f[(i + 1) % 3])] = f[(i + 2) % 3]
        options = []
        for (u, v), x in face_of.items():
            y = face_of.get((v, u))
            if y is None or str(u) > str(v):
                continue
            if cur.has_edge(x, y) or cur.degree(u) <= 3 or cur.degree(v) <= 3:
                continue
            options.append((u, v, x, y))
        if not options:
            break
        u, v, x, y = rng.choice(options)
        rot[u].remove(v)
        rot[v].remove(u)
        _insert_after(rot[x], u, y)
        _insert_after(rot[y], v, x)
    out = Triangulation({v: tuple(r) for v, r in rot.items()}, boundary)
    out.check()
    return out


def _dyadic(x: float, bits: int) -> Fraction:
    return Fraction(round(x * (1 << bits)), 1 << bits)


def tutte_drawing(tri: Triangulation, rng: random.Random, outer=DEFAULT_OUTER,
                  bits: int = 8, max_bits: int = 60, log_spread: Optional[float] = None) -> Drawing:
    """Weighted barycentric embedding with random positive weights, snapped
    to a dyadic grid fine enough for the drawing to stay valid.

    Weights are uniform in [1/2, 2], or ``exp(U(-s, s))`` with ``log_spread=s``;
    wide spreads give very different drawings of one triangulation.
    """
    outer = [geom.P(p) for p in outer]
    fixed = dict(zip(tri.boundary, outer))
    inner = list(tri.internal_vertices)
    idx = {v: i for i, v in enumerate(inner)}
    m = len(inner)
    if m:
        L = np.zeros((m, m))
        rhs = np.zeros((m, 2))
        weights = {}
        for v in inner:
            for u in tri.rotation[v]:
                key = frozenset((u, v))
                if key not in weights:
                    weights[key] = (rng.uniform(0.5, 2.0) if log_spread is None
                                    else math.exp(rng.uniform(-log_spread, log_spread)))
                w = weights[key]
                L[idx[v], idx[v]] += w
                if u in idx:
                    L[idx[v], idx[u]] -= w
                else:
                    rhs[idx[v]] += w * np.array([float(fixed[u][0]), float(fixed[u][1])])
        sol = np.linalg.solve(L, rhs)
    while True:
        coords = dict(fixed)
        for v in inner:
            coords[v] = Point(_dyadic(sol[idx[v], 0], bits), _dyadic(sol[idx[v], 1], bits))
        d = Drawing(tri, coords)
        if not validate_drawing(d):
            return d
        bits += 4
        if bits > max_bits:
            raise MorphError("could not snap the barycentric embedding to a valid grid drawing")


def drawing_pair(n: int, seed: int, flips: int = 0, outer=DEFAULT_OUTER, outer2=None):
    rng = random.Random(seed)
    tri = random_stacked(n, rng)
    if flips:
        tri = random_flips(tri, flips, rng)
    d1 = tutte_drawing(tri, rng, outer)
    d2 = tutte_drawing(tri, rng, outer2 or outer)
    return d1, d2


# ---------------------------------------------------------------------------
# random pseudo-morphs

def random_jiggle(d: Drawing, rng: random.Random, tries: int = 20) -> Optional[Drawing]:
    """A certified unidirectional step: one internal vertex slides inside its kernel."""
    tri = d.triangulation
    inner = list(tri.internal_vertices)
    if not inner:
        return None
    for _ in range(tries):
        v = rng.choice(inner)
        ring = tri.rotation[v]
        k = geom.kernel([d[u] for u in ring], check_simple=False)
        if k.is_empty or k.area2() == 0:
            continue
        verts = k.vertices
        w = [Fraction(rng.randint(1, 8)) for _ in verts]
        s = sum(w)
        generic = generic_placement(d, ring)
        target = geom.snap_inside(geom.combination([x / s for x in w], verts),
                                  lambda q: q != d[v] and generic(q))
        if target == d[v]:
            continue
        new = d.moved({v: target})
        if validate_drawing(new):
            continue
        if verify_step(d, new).certified:
            return new
    return None


def random_group_shift(d: Drawing, rng: random.Random) -> Optional[Drawing]:
    """Several vertices moving parallel to one random direction by different amounts."""
    tri = d.triangulation
    inner = list(tri.internal_vertices)
    if len(inner) < 2:
        return None
    direction = geom.Vector(Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
    if direction.is_zero():
        return None
    movers = rng.sample(inner, min(len(inner), rng.randint(2, 4)))
    for scale in (Fraction(1, 64), Fraction(1, 512), Fraction(1, 4096)):
        upd = {v: d[v] + direction.scale(scale * rng.randint(1, 3)) for v in movers}
        new = d.moved(upd)
        if not validate_drawing(new) and verify_step(d, new).certified:
            return new
    return None


def random_pseudo_morph(d: Drawing, rng: random.Random, max_depth: int = 5, events: int = 3) -> PseudoMorph:
    """Certified-by-construction random pseudo-morph starting at ``d``.

    Mixes linear jiggles with nested contractions (preferring links of five
    vertices so the sector machinery is exercised), up to ``max_depth`` deep.
    """
    out = []
    cur = d
    tri = d.triangulation
    for _ in range(events):
        choice = rng.random()
        if max_depth > 0 and len(tri.vertices) > 3 and choice < 0.6:
            nested = _random_nested(cur, rng, max_depth)
            if nested is not None:
                ev, cur = nested
                out.append(ev)
                continue
        step = random_jiggle(cur, rng) if rng.random() < 0.6 else random_group_shift(cur, rng)
        if step is not None:
            out.append(Linear(cur.coords, step.coords, "jiggle"))
            cur = step
    return PseudoMorph(tuple(out))


def _random_nested(d: Drawing, rng: random.Random, max_depth: int):
    tri = d.triangulation
    cands = []
    for p in tri.internal_vertices:
        if tri.degree(p) > 5:
            continue
        for a in tri.rotation[p]:
            if not creates_multi_edge(tri, p, a) and fan_valid(d, p, a):
                cands.append((tri.degree(p), p, a))
    if not cands:
        return None
    five = [c for c in cands if c[0] == 5]
    pool = five if five and rng.random() < 0.7 else cands
    _, p, a = rng.choice(pool)
    reduced, rec = contract(d, p, a)
    inner = random_pseudo_morph(reduced, rng, max_depth - 1, events=rng.randint(1, 3))
    from .morph import final_coords
    end = final_coords(inner, reduced)
    reentry = kernel_point(end, rec.ring)
    if rng.random() < 0.5:
        # somewhere else in the kernel, not only its centroid
        k = geom.kernel([end[u] for u in rec.ring], check_simple=False)
        w = [Fraction(rng.randint(1, 5)) for _ in k.vertices]
        s = sum(w)
        generic = generic_placement(end, rec.ring)
        alt = geom.snap_inside(geom.combination([x / s for x in w], k.vertices), generic)
        if generic(alt):
            reentry = alt
    after = uncontract(end, rec, reentry)
    return Nested(p, a, rec, inner, reentry, f"contract {p}->{a}"), after


# ---------------------------------------------------------------------------
# random steps for verifier testing

def random_step(rng: random.Random, n_max: int = 12, grid: int = 64):
    """Two valid drawings of one small triangulation, on a coarse grid.

    The pair is usually not unidirectional and fairly often not planar as a
    linear morph.  Coordinates stay on a 1/1024 grid.
    """
    outer = ((0, 0), (64, 0), (32, 55))
    while True:
        n = rng.randint(4, n_max)
        tri = random_stacked(n, rng)
        if n > 5 and rng.random() < 0.5:
            tri = random_flips(tri, rng.randint(1, n), rng)
        kind = rng.random()
        spread = None if kind < 0.2 or kind >= 0.6 else rng.choice((2.0, 4.0))
        try:
            a = tutte_drawing(tri, rng, outer, bits=6, max_bits=10, log_spread=spread)
            b = None
            if kind >= 0.6:
                b = _perturb(a, rng, grid)
            if b is None:
                b = tutte_drawing(tri, rng, outer, bits=6, max_bits=10, log_spread=spread)
        except MorphError:
            continue
        return a, b


def _perturb(d: Drawing, rng: random.Random, grid: int) -> Optional[Drawing]:
    tri = d.triangulation
    inner = list(tri.internal_vertices)
    for _ in range(30):
        movers = rng.sample(inner, rng.randint(1, len(inner)))
        upd = {}
        for v in movers:
            k = geom.kernel([d[u] for u in tri.rotation[v]], check_simple=False)
            if k.is_empty or k.area2() == 0:
                continue
            w = [Fraction(rng.randint(0, 6)) for _ in k.vertices]
            if sum(w) == 0:
                continue
            s = sum(w)
            p = geom.combination([x / s for x in w], k.vertices)
            upd[v] = Point(Fraction(round(p[0] * grid), grid), Fraction(round(p[1] * grid), grid))
        if not upd:
            continue
        new = d.moved(upd)
        if not validate_drawing(new) and new.coords != d.coords:
            return new
    return None
