"""Morphs, pseudo-morphs, step directions and step accounting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import TopologyMismatch
from .geom import Point, Vector, parallel
from .triangulation import ContractionRecord, Drawing, Triangulation


# ---------------------------------------------------------------------------
# directions

@dataclass(frozen=True)
class AnyDirection:
    """Every vertex is stationary, so the step is compatible with any line."""

    def compatible(self, v) -> bool:
        return True


@dataclass(frozen=True)
class Direction:
    vector: Vector

    def compatible(self, v) -> bool:
        return parallel(self.vector, v)


@dataclass(frozen=True)
class NotUnidirectional:
    u: object
    v: object


StepDirection = Union[AnyDirection, Direction, NotUnidirectional]


def displacements(c0: Mapping, c1: Mapping) -> dict:
    return {v: Vector(c1[v][0] - p[0], c1[v][1] - p[1]) for v, p in c0.items()}


def direction_of_coords(c0: Mapping, c1: Mapping) -> StepDirection:
    ref = None
    ref_v = None
    for v, p in c0.items():
        q = c1[v]
        d = Vector(q[0] - p[0], q[1] - p[1])
        if d.is_zero():
            continue
        if ref is None:
            ref, ref_v = d, v
        elif not parallel(ref, d):
            return NotUnidirectional(ref_v, v)
    return AnyDirection() if ref is None else Direction(ref)


def direction_of(a: Drawing, b: Drawing) -> StepDirection:
    if a.triangulation != b.triangulation:
        raise TopologyMismatch("drawings are on different triangulations")
    return direction_of_coords(a.coords, b.coords)


# ---------------------------------------------------------------------------
# morphs

@dataclass(frozen=True, eq=False)
class Morph:
    """Keyframe sequence on one triangulation; consecutive pairs are linear morphs."""

    triangulation: Triangulation
    keyframes: tuple
    provenance: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "keyframes", tuple(dict(k) for k in self.keyframes))
        if not self.keyframes:
            raise ValueError("a morph needs at least one keyframe")
        if self.provenance and len(self.provenance) != self.steps:
            raise ValueError("provenance must have one tag per step")
        object.__setattr__(self, "provenance", tuple(self.provenance))

    @classmethod
    def from_drawings(cls, drawings, provenance=()) -> "Morph":
        drawings = list(drawings)
        tri = drawings[0].triangulation
        for d in drawings[1:]:
            if d.triangulation != tri:
                raise TopologyMismatch("keyframes are not topologically equivalent")
        return cls(tri, tuple(d.coords for d in drawings), tuple(provenance))

    @property
    def steps(self) -> int:
        return len(self.keyframes) - 1

    def drawing(self, i: int) -> Drawing:
        return Drawing(self.triangulation, self.keyframes[i])

    def drawings(self):
        return [self.drawing(i) for i in range(len(self.keyframes))]

    def directions(self) -> list:
        return [direction_of_coords(a, b) for a, b in zip(self.keyframes, self.keyframes[1:])]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morph):
            return NotImplemented
        return self.triangulation == other.triangulation and self.keyframes == other.keyframes

    __hash__ = object.__hash__


def concat(first: Morph, second: Morph) -> Morph:
    if first.keyframes[-1] != second.keyframes[0]:
        raise ValueError("morphs do not meet")
    prov = ()
    if first.provenance or second.provenance:
        prov = (first.provenance or ("",) * first.steps) + (second.provenance or ("",) * second.steps)
    return Morph(first.triangulation, first.keyframes + second.keyframes[1:], prov)


# ---------------------------------------------------------------------------
# pseudo-morphs

@dataclass(frozen=True, eq=False)
class Linear:
    """One linear morph; ``source`` is kept so the event can be reversed alone."""

    source: Mapping
    target: Mapping
    tag: str = "linear"

    def __eq__(self, other):
        return isinstance(other, Linear) and self.source == other.source and self.target == other.target

    __hash__ = object.__hash__


@dataclass(frozen=True, eq=False)
class Nested:
    """Contract ``p`` to ``a``, run ``inner`` on the reduced drawing, uncontract at ``reentry``."""

    p: object
    a: object
    record: ContractionRecord
    inner: "PseudoMorph"
    reentry: Point
    tag: str = ""

    def __eq__(self, other):
        return (isinstance(other, Nested) and self.p == other.p and self.a == other.a
                and self.record.position == other.record.position
                and self.reentry == other.reentry and self.inner == other.inner)

    __hash__ = object.__hash__


Event = Union[Linear, Nested]


@dataclass(frozen=True, eq=False)
class PseudoMorph:
    events: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))

    def __eq__(self, other):
        return isinstance(other, PseudoMorph) and self.events == other.events

    __hash__ = object.__hash__

    def __add__(self, other: "PseudoMorph") -> "PseudoMorph":
        return PseudoMorph(self.events + other.events)

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class StepCount:
    linear: int = 0
    contractions: int = 0
    uncontractions: int = 0

    @property
    def total(self) -> int:
        return self.linear + self.contractions + self.uncontractions

    def __add__(self, other: "StepCount") -> "StepCount":
        return StepCount(self.linear + other.linear,
                         self.contractions + other.contractions,
                         self.uncontractions + other.uncontractions)


def count_steps(pm: PseudoMorph) -> StepCount:
    total = StepCount()
    for ev in pm.events:
        if isinstance(ev, Linear):
            total += StepCount(1, 0, 0)
        else:
            total += StepCount(0, 1, 1) + count_steps(ev.inner)
    return total


def reverse(m):
    if isinstance(m, Morph):
        prov = tuple(reversed(m.provenance))
        return Morph(m.triangulation, tuple(reversed(m.keyframes)), prov)
    if isinstance(m, PseudoMorph):
        return PseudoMorph(tuple(_reverse_event(e) for e in reversed(m.events)))
    raise TypeError(f"cannot reverse {type(m).__name__}")


def _reverse_event(ev: Event) -> Event:
    if isinstance(ev, Linear):
        return Linear(ev.target, ev.source, ev.tag)
    rec = ev.record.reversed_at(ev.reentry)
    return Nested(ev.p, ev.a, rec, reverse(ev.inner), ev.record.position, ev.tag)


def linear_events(m: Morph, tag: str = "linear") -> PseudoMorph:
    tags = m.provenance or (tag,) * m.steps
    return PseudoMorph(tuple(Linear(a, b, t) for a, b, t in zip(m.keyframes, m.keyframes[1:], tags)))


def final_coords(pm: PseudoMorph, start: Drawing) -> Drawing:
    """Drawing reached by running ``pm`` from ``start`` (no checks)."""
    from .triangulation import contract, uncontract

    d = start
    for ev in pm.events:
        if isinstance(ev, Linear):
            d = Drawing(d.triangulation, ev.target)
        else:
            reduced, rec = contract(d, ev.p, ev.a, check_kernel=False)
            end = final_coords(ev.inner, reduced)
            d = uncontract(end, rec, ev.reentry)
    return d


def depth(pm: PseudoMorph) -> int:
    best = 0
    for ev in pm.events:
        if isinstance(ev, Nested):
            best = max(best, 1 + depth(ev.inner))
    return best
