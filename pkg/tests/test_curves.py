import random

import pytest
from hypothesis import given, strategies as st

from curvecomplex.curves import (
    Curve,
    CurveType,
    InvalidCurve,
    ModelMismatch,
    _curve_type_from_homology,
    algebraic_intersection,
    canonicalize,
    cut_along,
    curve_type,
    curve_type_by_cutting,
    filled_subsurface,
    geometric_intersection,
    make_curve,
    validation_error,
)
from curvecomplex.spine import WordSyntaxError, spine_model
from curvecomplex.surface import SurfaceType
from conftest import window

P3 = SurfaceType(0, 3)


def cv(name, text):
    return Curve.parse(name, text)


def test_canonicalize_picks_least_rotation_of_class():
    m = spine_model("S1,1")
    assert canonicalize(m, "b1 a1") == canonicalize(m, "a1 b1")
    assert canonicalize(m, "a1 b1 a1'") == (2,)
    assert canonicalize(m, "a1' a1") == ()
    with pytest.raises(WordSyntaxError):
        canonicalize(m, "z1")


@pytest.mark.parametrize("text, why", [
    ("", "trivial"),
    ("z1", "peripheral"),
    ("z1 z2 z3 z4", "peripheral"),
    ("z1 z3 z1' z2", "not simple"),
])
def test_invalid_words(text, why):
    m = spine_model("S0,5")
    assert validation_error(m, m.parse(text)) == why
    with pytest.raises(InvalidCurve):
        make_curve(m, m.parse(text))


def test_curves_from_different_models_do_not_mix():
    with pytest.raises(ModelMismatch):
        geometric_intersection(cv("S1,1", "a1"), cv("S1,2", "a1"))


@pytest.mark.parametrize("name, text, kind", [
    ("S1,1", "a1", CurveType.NON_SEPARATING),
    ("S1,1", "a1 a1 b1", CurveType.NON_SEPARATING),
    ("S0,5", "z1 z2", CurveType.OUTER),
    ("S0,5", "z1 z2 z3", CurveType.OUTER),
    ("S1,2", "a1 b1 a1' b1'", CurveType.OUTER),
    ("S1,3", "z1 z2", CurveType.OUTER),
    ("S1,3", "a1 b1 a1' b1'", CurveType.SEPARATING),
    ("S2,1", "a1 b1 a1' b1'", CurveType.SEPARATING),
    ("S0,6", "z1 z2 z3", CurveType.SEPARATING),
])
def test_curve_type_examples(name, text, kind):
    c = cv(name, text)
    assert curve_type(c) is kind
    assert curve_type_by_cutting(c) is kind


def test_cut_along_examples():
    assert cut_along(spine_model("S1,1"), [cv("S1,1", "a1")]) == [(P3, frozenset({0}))]
    assert cut_along(spine_model("S0,5"), [cv("S0,5", "z2 z3")]) == [
        (P3, frozenset({1, 2})), (SurfaceType(0, 4), frozenset({0, 3, 4}))]
    assert cut_along(spine_model("S1,2"), [cv("S1,2", "a1 b1 a1' b1'")]) == [
        (P3, frozenset({0, 1})), (SurfaceType(1, 1), frozenset())]
    pants = cut_along(spine_model("S0,5"), [cv("S0,5", "z1 z2"), cv("S0,5", "z3 z4")])
    assert [t for t, _ in pants] == [P3, P3, P3]
    with pytest.raises(InvalidCurve):
        cut_along(spine_model("S1,1"), [cv("S1,1", "a1"), cv("S1,1", "b1")])


@pytest.mark.parametrize("name, depth", [("S0,5", 2), ("S1,2", 2), ("S1,3", 1), ("S0,6", 1), ("S2,1", 1)])
def test_homology_shortcut_agrees_with_cutting(name, depth):
    for c in window(name, depth):
        quick = _curve_type_from_homology(c.surface, c.word)
        if quick is not None:
            assert quick is curve_type_by_cutting(c), str(c)


@pytest.mark.parametrize("name, depth", [("S0,5", 2), ("S1,2", 2), ("S1,3", 1)])
def test_single_cut_conserves_euler_characteristic(name, depth):
    s = SurfaceType.parse(name)
    for c in list(window(name, depth))[:60]:
        pieces = cut_along(c.model, [c])
        assert sum(t.euler_characteristic for t, _ in pieces) == s.euler_characteristic
        assert sum(t.boundary for t, _ in pieces) == s.boundary + 2
        assert sorted(i for _, orig in pieces for i in orig) == list(range(s.boundary))


def test_filled_subsurface_examples():
    assert filled_subsurface([cv("S1,1", "a1"), cv("S1,1", "b1")]) == SurfaceType(1, 1)
    assert filled_subsurface([cv("S0,5", "z1 z2"), cv("S0,5", "z2 z3")]) == SurfaceType(0, 4)
    assert filled_subsurface([cv("S1,2", "a1"), cv("S1,2", "b1")]) == SurfaceType(1, 1)
    # disjoint curves fill nothing connected
    assert filled_subsurface([cv("S0,5", "z1 z2"), cv("S0,5", "z3 z4")]) is None
    assert filled_subsurface([cv("S0,5", "z1 z2")]) is None


def test_every_pair_meeting_fills_at_least_complexity_one():
    cs = list(window("S0,5", 1))
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            f = filled_subsurface([cs[i], cs[j]])
            if geometric_intersection(cs[i], cs[j]):
                assert f is not None and f.euler_characteristic >= -3
            else:
                assert f is None


def _pairs(name, depth, n, seed):
    cs = list(window(name, depth))
    rng = random.Random(seed)
    return [tuple(rng.sample(cs, 2)) for _ in range(n)]


@pytest.mark.parametrize("name", ["S1,1", "S1,2", "S0,5"])
def test_algebraic_bounds_geometric_with_matching_parity(name):
    for a, b in _pairs(name, 3, 200, 5):
        alg = algebraic_intersection(a, b)
        geo = geometric_intersection(a, b)
        assert abs(alg) <= geo
        assert (alg - geo) % 2 == 0
        assert algebraic_intersection(b, a) == -alg


def test_algebraic_intersection_on_torus():
    assert algebraic_intersection(cv("S1,1", "a1"), cv("S1,1", "b1")) in (1, -1)
    assert algebraic_intersection(cv("S1,1", "a1"), cv("S1,1", "a1")) == 0


@given(st.integers(0, 10_000))
def test_intersection_is_symmetric_on_window(seed):
    (a, b), = _pairs("S1,2", 3, 1, seed)
    assert geometric_intersection(a, b) == geometric_intersection(b, a)
    assert geometric_intersection(a, a) == 0
