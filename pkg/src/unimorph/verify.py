"""Exact certification of morph steps, morphs and pseudo-morphs.

A step between two valid drawings of a triangulation stays plane iff every
internal face and the boundary triangle keep strictly positive signed area
for all ``t`` in ``[0, 1]``.  Each area is a quadratic in ``t``, decided
exactly by :func:`geom.strictly_positive_on_01`.

:func:`sample_oracle` is an independent brute-force check used by tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import geom
from .errors import InvalidEndpoint, MorphError
from .morph import (Linear, Morph, NotUnidirectional, PseudoMorph,
                    StepCount, StepDirection, direction_of_coords)
from .triangulation import Drawing, Triangulation, contract, uncontract, validate_drawing


@dataclass(frozen=True)
class StepFailure:
    reason: str
    face: Optional[tuple] = None
    time: Optional[geom.Witness] = None
    witness: Optional[tuple] = None

    def describe(self) -> str:
        parts = [self.reason]
        if self.face is not None:
            parts.append(f"face {self.face!r}")
        if self.time is not None:
            parts.append(f"at t = {self.time}")
        if self.witness is not None:
            parts.append(f"vertices {self.witness!r}")
        return ", ".join(parts)


@dataclass(frozen=True)
class StepReport:
    direction: StepDirection
    planarity_failure: Optional[StepFailure] = None

    @property
    def planar(self) -> bool:
        return self.planarity_failure is None

    @property
    def unidirectional(self) -> bool:
        return not isinstance(self.direction, NotUnidirectional)

    @property
    def certified(self) -> bool:
        return self.planar and self.unidirectional

    @property
    def failure(self) -> Optional[StepFailure]:
        if self.planarity_failure is not None:
            return self.planarity_failure
        if isinstance(self.direction, NotUnidirectional):
            return StepFailure("not unidirectional", witness=(self.direction.u, self.direction.v))
        return None

    def __bool__(self) -> bool:
        return self.certified


def _witness_key(w) -> float:
    return float(w)


def _check_faces(tri: Triangulation, c0, c1, faces=None) -> Optional[StepFailure]:
    moved = {v for v, p in c0.items() if c1[v] != p}
    if not moved:
        return None
    if faces is None:
        z1, z2, z3 = tri.boundary
        faces = list(tri.faces) + [(z1, z2, z3)]
        if len(moved) * 6 < len(faces):
            fbv = tri.faces_by_vertex
            cand = set()
            for v in moved:
                cand.update(fbv[v])
            faces = list(cand)
            if moved & {z1, z2, z3}:
                faces.append((z1, z2, z3))
    best = None
    for f in faces:
        if not (moved & set(f)):
            continue
        a, b, c = f
        q = geom.area_quadratic(c0[a], c1[a], c0[b], c1[b], c0[c], c1[c])
        pos = geom.strictly_positive_on_01(q)
        if not pos.ok:
            if best is None or _witness_key(pos.witness) < _witness_key(best.time):
                best = StepFailure("face degenerates", f, pos.witness)
                if best.time == 0:
                    break
    return best


def verify_step_coords(tri: Triangulation, c0, c1, check_endpoints: bool = True,
                       faces=None) -> StepReport:
    if check_endpoints:
        for c in (c0, c1):
            bad = validate_drawing(Drawing(tri, c))
            if bad:
                raise InvalidEndpoint("; ".join(bad[:3]))
    return StepReport(direction_of_coords(c0, c1), _check_faces(tri, c0, c1, faces))


def verify_step(a: Drawing, b: Drawing) -> StepReport:
    if a.triangulation != b.triangulation:
        raise InvalidEndpoint("endpoints are on different triangulations")
    return verify_step_coords(a.triangulation, a.coords, b.coords)


@dataclass
class MorphReport:
    k: int
    directions: list
    failures: list = field(default_factory=list)  # (step index, StepFailure)

    @property
    def certified(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "Certified" if self.certified else "Failure"


def verify_morph(m: Morph, audit: bool = False) -> MorphReport:
    tri = m.triangulation
    report = MorphReport(m.steps, [])
    bad_frames = set()
    for i, c in enumerate(m.keyframes):
        bad = validate_drawing(Drawing(tri, c), audit=audit)
        if bad:
            bad_frames.add(i)
            report.failures.append((max(i - 1, 0), StepFailure("invalid keyframe: " + bad[0])))
    for i, (c0, c1) in enumerate(zip(m.keyframes, m.keyframes[1:])):
        r = verify_step_coords(tri, c0, c1, check_endpoints=False)
        report.directions.append(r.direction)
        if i in bad_frames or (i + 1) in bad_frames:
            continue
        if r.failure is not None:
            report.failures.append((i, r.failure))
    report.failures.sort(key=lambda x: x[0])
    return report


# ---------------------------------------------------------------------------
# pseudo-morphs

@dataclass
class PseudoMorphReport:
    steps: StepCount = field(default_factory=StepCount)
    failures: list = field(default_factory=list)  # (path, message)
    end: Optional[Drawing] = None

    @property
    def certified(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return "Certified" if self.certified else "Failure"


def verify_pseudo_morph(pm: PseudoMorph, start: Drawing) -> PseudoMorphReport:
    report = PseudoMorphReport()
    bad = validate_drawing(start)
    if bad:
        report.failures.append(((), "invalid start drawing: " + bad[0]))
        return report
    report.end = _walk(pm, start, (), report)
    return report


def _walk(pm: PseudoMorph, d: Drawing, path: tuple, report: PseudoMorphReport) -> Optional[Drawing]:
    for i, ev in enumerate(pm.events):
        here = path + (i,)
        if isinstance(ev, Linear):
            report.steps += StepCount(1, 0, 0)
            if ev.source != d.coords:
                report.failures.append((here, "linear step does not start at the current drawing"))
                return None
            target = Drawing(d.triangulation, ev.target)
            bad = validate_drawing(target)
            if bad:
                report.failures.append((here, "invalid target drawing: " + bad[0]))
                return None
            r = verify_step_coords(d.triangulation, d.coords, target.coords, check_endpoints=False)
            if not r.certified:
                report.failures.append((here, r.failure.describe()))
                return None
            d = target
        else:
            report.steps += StepCount(0, 1, 1)
            if ev.record.position != d.coords.get(ev.p):
                report.failures.append((here, f"contraction of {ev.p!r} does not match the current drawing"))
                return None
            try:
                reduced, rec = contract(d, ev.p, ev.a)
            except MorphError as exc:
                report.failures.append((here, f"{type(exc).__name__}: {exc}"))
                return None
            end = _walk(ev.inner, reduced, here, report)
            if end is None:
                return None
            try:
                d = uncontract(end, rec, ev.reentry)
            except MorphError as exc:
                report.failures.append((here, f"uncontraction {type(exc).__name__}: {exc}"))
                return None
    return d


# ---------------------------------------------------------------------------
# sampling oracle (test-only brute force)

@dataclass(frozen=True)
class NoViolationFound:
    samples: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Violation:
    time: Fraction
    detail: str

    def __bool__(self) -> bool:
        return True


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def sample_oracle(a: Drawing, b: Drawing, samples: int = 1000):
    """Validate the drawing, with the full segment audit, at evenly spaced times.

    Times are ``j / (samples - 1)``; coordinates are scaled to integers so the
    check is exact.  Small magnitudes use int64 arrays, larger ones Python ints.
    """
    tri = a.triangulation
    verts = list(tri.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n_t = max(int(samples), 2)
    N = n_t - 1
    den = _lcm(c.denominator for d in (a, b) for v in verts for c in d.coords[v])
    X0 = [[int(a.coords[v][k] * den) for v in verts] for k in (0, 1)]
    X1 = [[int(b.coords[v][k] * den) for v in verts] for k in (0, 1)]
    big = max(abs(x) for row in X0 + X1 for x in row) * N
    dtype = np.int64 if big < (1 << 29) else object
    j = np.arange(n_t, dtype=dtype).reshape(-1, 1)
    x0 = np.array(X0[0], dtype=dtype)
    y0 = np.array(X0[1], dtype=dtype)
    dx = np.array(X1[0], dtype=dtype) - x0
    dy = np.array(X1[1], dtype=dtype) - y0
    X = x0 * N + j * dx  # shape (T, V)
    Y = y0 * N + j * dy

    def orient(i, k, l):
        return (X[:, k] - X[:, i]) * (Y[:, l] - Y[:, i]) - (Y[:, k] - Y[:, i]) * (X[:, l] - X[:, i])

    first = {}

    def note(mask, detail):
        hits = np.nonzero(np.asarray(mask, dtype=bool))[0]
        if hits.size:
            t = int(hits[0])
            if t not in first:
                first[t] = detail

    # coincident vertices
    V = len(verts)
    ii, kk = np.triu_indices(V, 1)
    same = (X[:, ii] == X[:, kk]) & (Y[:, ii] == Y[:, kk])
    rows = np.nonzero(same.any(axis=1))[0]
    if rows.size:
        col = int(np.nonzero(same[rows[0]])[0][0])
        note(same.any(axis=1), f"coincident vertices {verts[ii[col]]!r}, {verts[kk[col]]!r}")

    faces = list(tri.faces) + [tri.boundary]
    fi = np.array([[idx[v] for v in f] for f in faces])
    F = orient(fi[:, 0], fi[:, 1], fi[:, 2])
    badf = F <= 0
    rows = np.nonzero(badf.any(axis=1))[0]
    if rows.size:
        col = int(np.nonzero(badf[rows[0]])[0][0])
        note(badf.any(axis=1), f"face {faces[col]!r} not counterclockwise")

    edges = [(idx[u], idx[v]) for u, v in tri.edges]
    e1, e2 = [], []
    for p in range(len(edges)):
        for q in range(p + 1, len(edges)):
            if len({*edges[p], *edges[q]}) == 4:
                e1.append(p)
                e2.append(q)
    if e1:
        E = np.array(edges)
        A, B = E[e1, 0], E[e1, 1]
        C, D = E[e2, 0], E[e2, 1]
        s1 = np.sign(orient(C, D, A).astype(np.float64) if dtype is object else orient(C, D, A))
        s2 = np.sign(orient(C, D, B).astype(np.float64) if dtype is object else orient(C, D, B))
        s3 = np.sign(orient(A, B, C).astype(np.float64) if dtype is object else orient(A, B, C))
        s4 = np.sign(orient(A, B, D).astype(np.float64) if dtype is object else orient(A, B, D))
        cross_ = (s1 * s2 < 0) & (s3 * s4 < 0)
        rows = np.nonzero(cross_.any(axis=1))[0]
        if rows.size:
            col = int(np.nonzero(cross_[rows[0]])[0][0])
            u1, v1 = tri.edges[e1[col]]
            u2, v2 = tri.edges[e2[col]]
            note(cross_.any(axis=1), f"edges {u1!r}-{v1!r} and {u2!r}-{v2!r} cross")
    # vertex on a non-incident edge
    pv, pe = [], []
    for v in range(V):
        for q, (u, w) in enumerate(edges):
            if v != u and v != w:
                pv.append(v)
                pe.append(q)
    if pv:
        E = np.array(edges)
        pv_a = np.array(pv)
        U, W = E[pe, 0], E[pe, 1]
        col0 = orient(U, W, pv_a) == 0
        inside = ((np.minimum(X[:, U], X[:, W]) <= X[:, pv_a]) & (X[:, pv_a] <= np.maximum(X[:, U], X[:, W]))
                  & (np.minimum(Y[:, U], Y[:, W]) <= Y[:, pv_a]) & (Y[:, pv_a] <= np.maximum(Y[:, U], Y[:, W])))
        touch = col0 & inside
        rows = np.nonzero(touch.any(axis=1))[0]
        if rows.size:
            col = int(np.nonzero(touch[rows[0]])[0][0])
            u, w = tri.edges[pe[col]]
            note(touch.any(axis=1), f"vertex {verts[pv[col]]!r} on edge {u!r}-{w!r}")
    if not first:
        return NoViolationFound(n_t)
    t = min(first)
    return Violation(Fraction(t, N), first[t])
