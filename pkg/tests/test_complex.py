import random

import networkx as nx
import pytest

from curvecomplex.complex import (
    CurveSet,
    EnumerationStats,
    MinimalIntersection,
    SmallIntersection,
    adjacency_graph,
    chain_neighbors,
    complex_adjacent,
    curve_set,
    enumerate_curves,
    is_pants_decomposition,
    link,
    load_curve_set,
    max_disjoint_separating,
    minimal_intersection_type,
    pants_census,
    pants_certificate,
    save_curve_set,
    small_intersection_type,
)
from curvecomplex.curves import Curve, InvalidCurve, curve_type, geometric_intersection
from curvecomplex.mapping import generator_set
from curvecomplex.spine import spine_model
from conftest import window


def cv(name, text):
    return Curve.parse(name, text)


@pytest.mark.parametrize("name", ["S1,1", "S0,4", "S0,5", "S1,2"])
def test_depth_zero_is_the_base_curves(name):
    cs = enumerate_curves(spine_model(name), 0)
    assert set(cs) == set(generator_set(name).base_curves)


@pytest.mark.parametrize("name", ["S1,1", "S0,5", "S1,2"])
def test_windows_grow_monotonically_and_deterministically(name):
    m = spine_model(name)
    sizes = []
    for d in range(4):
        a, b = enumerate_curves(m, d), enumerate_curves(m, d)
        assert a.lines() == b.lines()
        sizes.append(set(a))
    assert all(x <= y for x, y in zip(sizes, sizes[1:]))


def test_window_sizes_on_four_holed_sphere():
    m = spine_model("S0,4")
    assert [len(enumerate_curves(m, d)) for d in range(4)] == [2, 8, 24, 80]


def test_windows_are_closed_under_one_generator_step_back():
    # every curve at depth d is a generator image of a curve at depth d - 1
    from curvecomplex.mapping import apply_symbol
    m = spine_model("S0,5")
    gs = generator_set(m)
    prev, cur = set(window("S0,5", 1)), window("S0,5", 2)
    for c in cur:
        if c in prev:
            continue
        assert any(Curve(c.surface, apply_symbol(c.surface, x, c.word)) in prev for x in gs.symbols)


def test_cache_round_trip_is_byte_identical(tmp_path):
    stats = EnumerationStats()
    a = curve_set("S0,5", 2, cache_dir=tmp_path, stats=stats)
    assert stats.cache_writes == 1 and stats.generator_applications > 0
    path = next(tmp_path.iterdir())
    first = path.read_bytes()
    stats2 = EnumerationStats()
    b = curve_set("S0,5", 2, cache_dir=tmp_path, stats=stats2)
    assert stats2.cache_hits == 1 and stats2.generator_applications == 0
    assert a.lines() == b.lines()
    save_curve_set(b, tmp_path / "again.curves")
    assert (tmp_path / "again.curves").read_bytes() == first
    assert load_curve_set(tmp_path / "again.curves").curves == a.curves


def test_malformed_cache_file(tmp_path):
    p = tmp_path / "bad.curves"
    p.write_text("S0,5\nz1 z2\n")
    with pytest.raises(ValueError):
        load_curve_set(p)


def test_edge_rule_at_complexity_one():
    a, b = cv("S1,1", "a1"), cv("S1,1", "b1")
    assert minimal_intersection_type(a, b) is MinimalIntersection.ONCE
    assert complex_adjacent(a, b)
    assert not complex_adjacent(a, cv("S1,1", "a1 a1 b1 a1 b1"))
    x, y = cv("S0,4", "z1 z2"), cv("S0,4", "z2 z3")
    assert minimal_intersection_type(x, y) is MinimalIntersection.TWICE_ZERO_ALGEBRAIC
    assert complex_adjacent(x, y)
    with pytest.raises(ValueError):
        complex_adjacent(a, a)


def test_edge_rule_above_complexity_one():
    assert complex_adjacent(cv("S0,5", "z1 z2"), cv("S0,5", "z3 z4"))
    assert not complex_adjacent(cv("S0,5", "z1 z2"), cv("S0,5", "z2 z3"))
    assert not complex_adjacent(cv("S1,2", "a1"), cv("S1,2", "b1"))


def test_small_intersection_types():
    assert small_intersection_type(cv("S0,5", "z1 z2"), cv("S0,5", "z2 z3")) is SmallIntersection.FOUR_HOLED_SPHERE
    assert small_intersection_type(cv("S1,2", "a1"), cv("S1,2", "b1")) is SmallIntersection.ONE_HOLED_TORUS
    assert small_intersection_type(cv("S0,5", "z1 z2"), cv("S0,5", "z3 z4")) is SmallIntersection.NONE


@pytest.mark.parametrize("name, depth", [("S0,5", 2), ("S1,2", 2)])
def test_link_is_symmetric_and_disjoint(name, depth):
    s = window(name, depth)
    rng = random.Random(2)
    for c in rng.sample(list(s), 15):
        lk = link(c, s)
        assert c not in lk
        for d in lk:
            assert geometric_intersection(c, d) == 0
            assert c in link(d, s)


def test_link_at_complexity_one_is_empty_and_chain_neighbours_are_not():
    s = window("S1,1", 3)
    a = cv("S1,1", "a1")
    assert link(a, s) == set()
    assert cv("S1,1", "b1") in chain_neighbors(a, s)
    assert all(geometric_intersection(a, d) == 1 for d in chain_neighbors(a, s))
    with pytest.raises(KeyError):
        link(cv("S1,1", "a1 a1 a1 a1 a1 b1"), s)


def test_pants_decompositions_and_graphs():
    q = [cv("S0,5", "z1 z2"), cv("S0,5", "z3 z4")]
    assert is_pants_decomposition(q) and pants_certificate(q)
    assert nx.is_isomorphic(adjacency_graph(q), nx.path_graph(2))
    assert not is_pants_decomposition(q[:1])
    with pytest.raises(InvalidCurve):
        is_pants_decomposition([cv("S0,5", "z1 z2"), cv("S0,5", "z2 z3")])


def test_six_holed_sphere_graphs():
    path = [cv("S0,6", "z1 z2"), cv("S0,6", "z1 z2 z3"), cv("S0,6", "z1 z2 z3 z4")]
    tri = [cv("S0,6", "z1 z2"), cv("S0,6", "z3 z4"), cv("S0,6", "z1 z2 z3 z4")]
    assert nx.is_isomorphic(adjacency_graph(path), nx.path_graph(3))
    assert nx.is_isomorphic(adjacency_graph(tri), nx.complete_graph(3))


@pytest.mark.parametrize("name, depth, expected", [("S0,5", 3, 2), ("S1,2", 3, 1), ("S1,3", 2, 2), ("S1,1", 2, 0)])
def test_max_disjoint_separating(name, depth, expected):
    n, witness = max_disjoint_separating(window(name, depth))
    assert n == expected
    if n:
        assert len(witness) == n
        assert all(curve_type(c).value != "non-separating" for c in witness)
        assert all(geometric_intersection(x, y) == 0 for x in witness for y in witness)


def test_census_on_five_holed_sphere():
    c = pants_census(window("S0,5", 2))
    assert c.decompositions > 0
    assert c.n_graph_types == 1
    assert set(c.type_classes) == {("outer", "outer")}
