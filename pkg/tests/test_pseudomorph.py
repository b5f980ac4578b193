import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import CASE_A_QUAD, case_a_drawing, case_b_drawing, k4
from unimorph import geom
from unimorph.errors import NoFeasibleParameter, OrientationReversed, TopologyMismatch, InvalidEndpoint
from unimorph.instances import drawing_pair, random_stacked, tutte_drawing
from unimorph.morph import count_steps, final_coords
from unimorph.pseudomorph import (IDENTITY, ROT90, ConvexifyTask, Direct, ProblematicType,
                                  affine_factors, build_pseudo_morph, case_a, case_b,
                                  classify_problematic, convexify4gon, convexify_parameter, mat_mul,
                                  normalize_boundary, quad_convex, retarget, select_contraction)
from unimorph.triangulation import fan_valid
from unimorph.verify import verify_morph, verify_pseudo_morph


def _product(factors):
    prod = IDENTITY
    for m in factors:
        prod = mat_mul(m, prod)
    return prod


def _m(a, b, c, d):
    return ((F(a), F(b)), (F(c), F(d)))


def test_identity_has_no_factors():
    assert affine_factors(IDENTITY) == []


def test_quarter_turn_uses_three_shears():
    f = affine_factors(_m(0, -1, 1, 0))
    assert len(f) == 3 and _product(f) == _m(0, -1, 1, 0)
    assert _product(ROT90) == _m(0, -1, 1, 0)


def test_minus_identity():
    f = affine_factors(_m(-1, 0, 0, -1))
    assert len(f) <= 6 and _product(f) == _m(-1, 0, 0, -1)


def test_mirror_rejected():
    with pytest.raises(OrientationReversed):
        affine_factors(_m(1, 0, 0, -1))


matrices = st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=8)] * 4).filter(
    lambda m: m[0] * m[3] - m[1] * m[2] > 0)


@given(matrices)
def test_factors_are_axis_maps_with_right_product(m):
    A = ((m[0], m[1]), (m[2], m[3]))
    fs = affine_factors(A)
    assert len(fs) <= 6 and _product(fs) == A
    for f in fs:
        # each factor changes exactly one coordinate and keeps orientation
        assert f[1] == (0, 1) or f[0] == (1, 0)
        assert f[0][0] * f[1][1] - f[0][1] * f[1][0] > 0


def test_normalize_translation_only():
    d1 = k4()
    d2 = d1.moved({v: p + geom.Vector(F(5), F(-2)) for v, p in d1.coords.items()})
    prefix, aligned = normalize_boundary(d1, d2)
    assert prefix.steps == 1
    assert all(aligned[z] == d1[z] for z in d1.triangulation.boundary)


def test_normalize_rotation():
    d1 = k4()
    rot = {v: geom.Point(-p[1], p[0]) for v, p in d1.coords.items()}
    prefix, aligned = normalize_boundary(d1, d1.moved(rot))
    assert prefix.steps == 3
    assert verify_morph(prefix).certified


def test_k4_single_step_and_general_move():
    pm = build_pseudo_morph(k4(), k4((2, 1)))
    assert count_steps(pm).total == 1
    pm = build_pseudo_morph(k4(), k4((1, 2)).moved({"z2": (5, 0)}))
    assert verify_pseudo_morph(pm, k4()).certified


def test_equal_drawings_give_empty():
    d1, _ = drawing_pair(12, 3)
    assert count_steps(build_pseudo_morph(d1, d1)).total == 0


def test_builder_rejects_mirror_and_invalid():
    d = k4()
    with pytest.raises(InvalidEndpoint, match="same faces and the same outer face"):
        build_pseudo_morph(d, k4((5, 5)))


def test_builder_rejects_other_triangulation():
    from test_triangulation import gadget
    with pytest.raises(TopologyMismatch):
        build_pseudo_morph(k4(), gadget())


def test_classify_problematic():
    d = case_a_drawing()
    task = ConvexifyTask(CASE_A_QUAD, [("z1", "w")])
    assert classify_problematic(d, task, "z2") is ProblematicType.TYPE1
    assert classify_problematic(d, task, "y") is ProblematicType.TYPE2


def test_case_a_corner_target_is_infeasible():
    d = case_a_drawing()
    assert not quad_convex(d, CASE_A_QUAD)
    with pytest.raises(NoFeasibleParameter):
        convexify_parameter(d, "y", d["z1"], {"w"}, ("y", "z2", "z3"), CASE_A_QUAD)


def test_case_a_fixture():
    d = case_a_drawing()
    task = ConvexifyTask(CASE_A_QUAD, [("z1", "w")])
    pm, end = case_a(d, task, "z1")
    assert quad_convex(end, CASE_A_QUAD)
    assert count_steps(pm).total == 1
    assert "fallback" in pm.events[0].tag
    assert verify_pseudo_morph(pm, d).certified


B_BASE = {"z1": (0, 0), "z2": (12, 0), "z3": (6, 10), "y1": (9, F(5, 2)), "y2": (4, 4), "y3": (6, 2)}


@pytest.mark.parametrize("w, quad, chord, tag", [
    ((8, F(5, 2)), ("z1", "y3", "w", "y2"), ("z1", "w"), "case B: y1 toward z3"),
    ((7, 3), ("z1", "z2", "y3", "y2"), ("z2", "y2"), "case B: y2 toward z1"),
])
def test_case_b_fixtures(w, quad, chord, tag):
    d = case_b_drawing(dict(B_BASE, w=w))
    task = ConvexifyTask(quad, [chord])
    assert not quad_convex(d, quad)
    pm, end = case_b(d, task)
    assert quad_convex(end, quad)
    assert [e.tag for e in pm.events] == [tag]
    assert verify_pseudo_morph(pm, d).certified


def test_tracked_followers_keep_barycentric():
    d = case_b_drawing(dict(B_BASE, w=(8, F(5, 2))))
    task = ConvexifyTask(("z1", "y3", "w", "y2"), [("z1", "w")])
    pm, end = case_b(d, task)
    T = ("y1", "y2", "y3")
    assert geom.barycentric(end["w"], *(end[v] for v in T)) == geom.barycentric(d["w"], *(d[v] for v in T))


def test_convexify4gon_generic():
    d = case_a_drawing()
    task = ConvexifyTask(CASE_A_QUAD, [("z1", "w")])
    pm, end = convexify4gon(d, task)
    assert quad_convex(end, CASE_A_QUAD)
    assert final_coords(pm, d) == end


def test_select_contraction_direct():
    sel = select_contraction(k4(), k4((2, 1)))
    assert isinstance(sel, Direct)
    assert fan_valid(k4(), sel.p, sel.a) and fan_valid(k4((2, 1)), sel.p, sel.a)


@settings(max_examples=20)
@given(st.integers(0, 10**6))
def test_retarget_makes_goal_valid(seed):
    rng = random.Random(seed)
    tri = random_stacked(rng.randint(8, 20), rng)
    d = tutte_drawing(tri, rng)
    from unimorph.triangulation import creates_multi_edge
    cands = [(p, a) for p in tri.internal_vertices if 4 <= tri.degree(p) <= 5
             for a in tri.rotation[p] if not creates_multi_edge(tri, p, a) and not fan_valid(d, p, a)]
    if not cands:
        return
    p, goal = rng.choice(cands)
    simple = tuple(a for a in tri.rotation[p] if not creates_multi_edge(tri, p, a))
    if not any(fan_valid(d, p, a) for a in simple):
        return
    pm, end = retarget(d, p, goal, simple)
    assert fan_valid(end, p, goal)
    assert verify_pseudo_morph(pm, d).certified


@settings(max_examples=10)
@given(st.integers(0, 10**6), st.integers(6, 30))
def test_build_random_pairs(seed, n):
    d1, d2 = drawing_pair(n, seed, flips=n // 2)
    pm = build_pseudo_morph(d1, d2)
    assert final_coords(pm, d1) == d2
