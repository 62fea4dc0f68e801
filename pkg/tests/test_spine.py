import pytest

from curvecomplex.spine import UnsupportedSurface, WordSyntaxError, spine_model
from curvecomplex.surface import SurfaceType
from curvecomplex.words import canonical

MODELS = ["S1,1", "S0,4", "S0,5", "S1,2", "S1,3", "S0,6", "S2,1", "S2,2"]


@pytest.mark.parametrize("name", MODELS)
def test_faces_partition_corners(name):
    m = spine_model(name)
    s = m.surface
    assert len(m.boundary_words) == s.boundary
    corners = [h for f in m.face_corners for h in f]
    assert sorted(corners) == sorted(m.rotation)
    # every band side is walked exactly once
    assert sum(len(w) for w in m.boundary_words) == 2 * m.rank
    assert 1 - m.rank == s.euler_characteristic


@pytest.mark.parametrize("name", MODELS)
def test_boundary_numbering(name):
    m = spine_model(name)
    g = m.surface.genus
    for j in range(m.surface.boundary - 1):
        assert canonical(m.boundary_words[j]) == canonical((2 * g + j + 1,))


def test_one_holed_torus_boundary_is_commutator():
    m = spine_model("S1,1")
    assert m.is_peripheral(m.parse("a1 b1 a1' b1'"))
    assert not m.is_peripheral(m.parse("a1"))


def test_outer_boundary_of_five_holed_sphere():
    m = spine_model("S0,5")
    assert m.peripheral_index(m.parse("z1 z2 z3 z4")) == 4


def test_closed_surface_rejected():
    with pytest.raises(UnsupportedSurface):
        spine_model(SurfaceType(2, 0))


def test_parse_format_roundtrip():
    m = spine_model("S1,2")
    w = m.parse("a1 b1' z1 a1''")
    assert w == (1, -2, 3, 1)
    assert m.format(w) == "a1 b1' z1 a1"
    with pytest.raises(WordSyntaxError):
        m.parse("a2")
    with pytest.raises(WordSyntaxError):
        m.parse("x")


def test_intersection_form_is_symplectic_on_handles():
    form = spine_model("S2,1").intersection_form
    for i in range(4):
        for j in range(4):
            assert form[i][j] == -form[j][i]
    assert abs(form[0][1]) == 1 and form[0][2] == 0
    assert all(x == 0 for row in spine_model("S0,5").intersection_form for x in row)
