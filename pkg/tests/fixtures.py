"""Small hand-built drawings used across the test modules."""

import math

from unimorph.geom import P
from unimorph.triangulation import Drawing, Triangulation


def from_geometry(coords: dict, edges, boundary) -> Drawing:
    """Rotation system read off the straight-line picture itself."""
    coords = {v: P(p) for v, p in coords.items()}
    nbrs = {v: [] for v in coords}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, ns in nbrs.items():
        x, y = coords[v]
        rot[v] = tuple(sorted(ns, key=lambda u: math.atan2(float(coords[u][1] - y), float(coords[u][0] - x))))
    tri = Triangulation(rot, tuple(boundary))
    tri.check()
    return Drawing(tri, coords)


def k4(center=(1, 1)) -> Drawing:
    """The center may be placed anywhere, even where the drawing is invalid."""
    coords = {"z1": (0, 0), "z2": (4, 0), "z3": (0, 4), "c": (1, 1)}
    edges = [("z1", "z2"), ("z2", "z3"), ("z3", "z1"), ("c", "z1"), ("c", "z2"), ("c", "z3")]
    return from_geometry(coords, edges, ("z1", "z2", "z3")).moved({"c": center})


def case_a_drawing() -> Drawing:
    """Corner z1 of degree 3; the 4-gon z1 z2 w y is reflex at y."""
    coords = {"z1": (5, 10), "z2": (0, 0), "z3": (10, 0), "y": (5, 6), "w": (7, 1)}
    edges = [("z1", "z2"), ("z2", "z3"), ("z3", "z1"), ("y", "z1"), ("y", "z2"), ("y", "z3"),
             ("w", "y"), ("w", "z2"), ("w", "z3")]
    return from_geometry(coords, edges, ("z2", "z3", "z1"))


CASE_A_QUAD = ("z1", "z2", "w", "y")


def _case_b_edges(extra=()):
    edges = [("z1", "z2"), ("z2", "z3"), ("z3", "z1"),
             ("y3", "z1"), ("y3", "z2"), ("y1", "z2"), ("y1", "z3"), ("y2", "z3"), ("y2", "z1"),
             ("y1", "y2"), ("y2", "y3"), ("y3", "y1")]
    return edges + list(extra)


def case_b_drawing(coords) -> Drawing:
    """Corners of degree 4 around the triangle y1 y2 y3, with w inside it."""
    edges = _case_b_edges([("w", "y1"), ("w", "y2"), ("w", "y3")])
    return from_geometry(coords, edges, ("z1", "z2", "z3"))


def triangle_only(coords) -> Drawing:
    rot = {"z1": ("z2", "z3"), "z2": ("z3", "z1"), "z3": ("z1", "z2")}
    return Drawing(Triangulation(rot, ("z1", "z2", "z3")), coords)


def tangency_pair():
    """Doubled area of the only face is (1 - 2t)^2: zero at t = 1/2 and nowhere else."""
    a = triangle_only({"z1": (0, 0), "z2": (1, 0), "z3": (0, 1)})
    b = triangle_only({"z1": (0, 0), "z2": (-1, 1), "z3": (0, -1)})
    return a, b
