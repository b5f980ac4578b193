"""Exact predicates, kernels, quadratics and slabs."""

from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from unimorph import geom
from unimorph.errors import BadWeights, DegenerateTriangle, EmptyRegion
from unimorph.geom import ConvexRegion, Point, QuadraticPoly, Vector

small = st.fractions(min_value=-20, max_value=20, max_denominator=16)
points = st.builds(Point, small, small)


def test_q_rejects_floats():
    with pytest.raises(TypeError):
        geom.Q(0.5)


def test_point_difference_is_vector():
    d = Point(F(3), F(1)) - Point(F(1), F(1))
    assert isinstance(d, Vector) and d == (2, 0)


def test_barycentric_midpoint_of_edge():
    assert geom.barycentric((1, 0), (0, 0), (2, 0), (0, 2)) == (F(1, 2), F(1, 2), 0)


def test_barycentric_degenerate():
    with pytest.raises(DegenerateTriangle):
        geom.barycentric((1, 1), (0, 0), (1, 1), (2, 2))


def test_follow_displacement_formula():
    # 1/2*3 + 1/4*(-1) + 1/4*2
    assert geom.follow_displacement((F(1, 2), F(1, 4), F(1, 4)), (3, -1, 2)) == F(7, 4)


def test_follow_displacement_bad_weights():
    with pytest.raises(BadWeights):
        geom.follow_displacement((F(1, 2), F(1, 2), F(1, 2)), (1, 1, 1))


@given(points, points, points)
def test_orientation_antisymmetric(a, b, c):
    assert geom.area2(a, b, c) == -geom.area2(b, a, c)
    assert geom.area2(a, b, c) == geom.area2(b, c, a)


@given(st.fractions(min_value=0, max_value=10**6, max_denominator=10**4))
def test_sqrt_bounds(x):
    lo, hi = geom.sqrt_floor(x, 20), geom.sqrt_ceil(x, 20)
    assert lo * lo <= x <= hi * hi
    assert hi - lo <= F(1, 2 ** 20)


def test_dart_kernel():
    dart = [(0, 0), (2, 1), (4, 0), (2, 4)]
    k = geom.kernel(dart)
    # frozen from a hand computation of the three binding half-planes
    assert set(k.vertices) == {Point(F(2), F(1)), Point(F(16, 5), F(8, 5)), Point(F(2), F(4)),
                               Point(F(4, 5), F(8, 5))}


def test_open_kernel_with_skip_vertex():
    square = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert geom.in_open_kernel((1, 1), square)
    assert not geom.in_open_kernel((0, 0), square)
    assert geom.in_open_kernel((0, 0), square, skip_vertex=0)


def test_tangent_area_polynomial():
    # c travels from (2,1) to (2,-1)... wait no: apex dips to the base line at t = 1/2
    q = geom.area_quadratic((0, 0), (0, 0), (1, 0), (1, 0), (F(1, 2), 1), (F(1, 2), 1))
    assert q.coefficients == (0, 0, F(1, 2))


def test_quadratic_double_root_detected():
    assert not geom.strictly_positive_on_01(QuadraticPoly(F(1), F(-2), F(1)))
    assert geom.strictly_positive_on_01(QuadraticPoly(F(1), F(-2), F(1))).witness == 1
    assert geom.strictly_positive_on_01(QuadraticPoly(F(1), F(-1), F(1)))
    assert geom.strictly_positive_on_01(QuadraticPoly(F(4), F(-4), F(1))).witness == F(1, 2)


def test_irrational_root_witness():
    # t^2 - 1/2 vanishes at sqrt(1/2)
    res = geom.strictly_positive_on_01(QuadraticPoly(F(-1), F(0), F(1, 2)))
    assert not res
    assert abs(float(res.witness) - 0.5 ** 0.5) < 1e-12


@given(small, small, small)
def test_positivity_agrees_with_dense_sampling(a2, a1, a0):
    q = QuadraticPoly(a2, a1, a0)
    exact = bool(geom.strictly_positive_on_01(q))
    sampled = all(q(F(j, 256)) > 0 for j in range(257))
    if exact:
        assert sampled
    if not sampled:
        assert not exact


@given(points, points, points, points, points, points, st.fractions(0, 1, max_denominator=50))
def test_area_quadratic_matches_direct(a0, a1, b0, b1, c0, c1, t):
    q = geom.area_quadratic(a0, a1, b0, b1, c0, c1)
    direct = geom.area2(geom.lerp(a0, a1, t), geom.lerp(b0, b1, t), geom.lerp(c0, c1, t)) / 2
    assert q(t) == direct


def test_positive_interval_first():
    # (t - 1/4)(t - 3/4) is positive on (0, 1/4) first
    q = QuadraticPoly(F(1), F(-1), F(3, 16))
    lo, hi = geom.positive_interval_first([q])
    assert (lo, hi) == (0, 0.25)
    assert geom.positive_interval_first([QuadraticPoly(F(0), F(0), F(-1))]) is None


def test_clip_keeps_open_flags():
    sq = ConvexRegion.closed([(0, 0), (1, 0), (1, 1), (0, 1)])
    half = sq.clip_left_of((0, F(1, 2)), (1, F(1, 2)), open_=True)   # keeps y > 1/2
    assert not half.contains((F(1, 2), F(1, 2)))
    assert half.contains((F(1, 2), F(3, 4)))
    assert half.contains((F(1, 2), 1))


def test_slab_truncation_and_projection():
    sq = ConvexRegion.closed([(0, 0), (1, 0), (1, 1), (0, 1)])
    slab = geom.SlabInterval(Vector(F(1), F(0)), F(0), F(1, 2), True, True)
    t = geom.truncate(sq, slab)
    assert not t.contains((F(1, 2), 0)) and not t.contains((F(1, 2), F(1, 2)))
    assert t.contains((F(1, 2), F(1, 4)))
    proj = geom.project_onto_normal(sq.interior(), Vector(F(1), F(0)))
    assert (proj.lo, proj.hi, proj.lo_open, proj.hi_open) == (0, 1, True, True)


def test_triangle_projection():
    tri = ConvexRegion.closed([(0, 0), (4, 0), (0, 4)])
    proj = geom.project_onto_normal(tri, Vector(F(2), F(1)))
    assert (proj.lo, proj.hi) == (-4, 8)


def test_line_chord():
    sq = ConvexRegion.closed([(0, 0), (2, 0), (2, 2), (0, 2)]).interior()
    lo, hi, lo_open, hi_open = geom.line_chord(sq, (1, 1), Vector(F(1), F(0)))
    assert (lo, hi, lo_open, hi_open) == (-1, 1, True, True)
    assert geom.line_chord(sq, (1, 5), Vector(F(1), F(0))) is None


def test_simplest_dyadic():
    assert geom.simplest_dyadic(F(1, 3), F(2, 3)) == F(1, 2)
    assert geom.simplest_dyadic(F(0), F(1)) == F(1, 2)
    assert geom.simplest_dyadic(F(0), F(1), False, True) == 0
    assert geom.simplest_dyadic(F(-5, 2), F(7)) == -2
    with pytest.raises(EmptyRegion):
        geom.simplest_dyadic(F(1), F(1))


@given(st.fractions(-50, 50, max_denominator=1000), st.fractions(F(1, 1000), 5, max_denominator=1000))
def test_simplest_dyadic_inside(lo, width):
    x = geom.simplest_dyadic(lo, lo + width)
    assert lo < x < lo + width
    assert x.denominator & (x.denominator - 1) == 0


def test_snap_inside_prefers_coarse_points():
    q = geom.snap_inside((F(1001, 1000), F(1999, 1000)), lambda p: 0 < p[0] < 3 and 0 < p[1] < 3)
    assert q == (1, 2)


def test_wedge_contains():
    w = geom.Wedge(Point(F(0), F(0)), Vector(F(1), F(0)), Vector(F(0), F(1)))
    assert w.contains((1, 1))
    assert not w.contains((-1, 1))
    assert w.contains((1, 0)) and not w.contains((1, 0), strict=True)


@st.composite
def star_polygons(draw):
    """Vertices at increasing angles around the origin, so the origin sees them all."""
    n = draw(st.integers(3, 7))
    dirs = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1), (-1, 0), (-2, -1),
            (-1, -1), (-1, -2), (0, -1), (1, -2), (1, -1), (2, -1)]
    picks = sorted(draw(st.lists(st.integers(0, 15), min_size=n, max_size=n, unique=True)))
    radii = draw(st.lists(st.integers(1, 9), min_size=n, max_size=n))
    return [Point(F(dirs[i][0] * r), F(dirs[i][1] * r)) for i, r in zip(picks, radii)]


@given(star_polygons())
def test_kernel_representative_sees_every_edge(poly):
    assume(all(geom.area2(poly[i], poly[(i + 1) % len(poly)], (0, 0)) > 0 for i in range(len(poly))))
    k = geom.kernel(poly)
    assert k.contains((0, 0))
    assert geom.in_open_kernel(k.representative(), poly)
