import pytest
from hypothesis import given, strategies as st

from curvecomplex.surface import SurfaceType, complexity, homeomorphic, inventory

S = SurfaceType


@pytest.mark.parametrize("s, k", [(S(1, 1), 1), (S(0, 4), 1), (S(0, 5), 2), (S(1, 2), 2),
                                  (S(0, 3), 0), (S(2, 0), 3), (S(0, 0), -3), (S(0, 2), -1)])
def test_complexity_values(s, k):
    assert complexity(s) == k
    assert s.complexity == k


def test_homeomorphic():
    assert homeomorphic(S(1, 1), S(1, 1))
    assert not homeomorphic(S(1, 1), S(0, 4))
    assert not homeomorphic(S(1, 3), S(0, 6))


def test_inventory_lists():
    assert inventory(1) == {S(1, 1), S(0, 4)}
    assert inventory(2) == {S(1, 2), S(0, 5)}
    assert inventory(3) == {S(2, 0), S(1, 3), S(0, 6)}


@pytest.mark.parametrize("k", [0, 4, -1])
def test_inventory_out_of_range(k):
    with pytest.raises(ValueError):
        inventory(k)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_inventory_matches_exhaustive_search(k):
    found = {S(g, b) for g in range(3) for b in range(7) if 3 * g + b - 3 == k}
    assert inventory(k) == found


def test_parse_and_format_roundtrip():
    assert SurfaceType.parse("S1,2") == S(1, 2)
    assert SurfaceType.parse(" S0, 5 ") == S(0, 5)
    assert str(S(2, 1)) == "S2,1"
    for bad in ["S1", "T1,2", "S-1,2", "1,2"]:
        with pytest.raises(ValueError):
            SurfaceType.parse(bad)


def test_negative_fields_rejected():
    with pytest.raises(ValueError):
        S(-1, 2)


@given(st.integers(0, 5), st.integers(0, 8))
def test_equality_is_homeomorphism(g, b):
    assert (S(g, b) == S(g, b)) and homeomorphic(S(g, b), S(g, b))
    assert S.from_euler(S(g, b).euler_characteristic, b) == S(g, b)
    assert S.parse(str(S(g, b))) == S(g, b)
