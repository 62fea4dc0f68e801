import io
import shutil
import subprocess
import sys

import pytest

from curvecomplex.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_intersect():
    assert call("intersect", "S1,1", "a1", "b1") == (0, "1\n")
    code, text = call("intersect", "S1,1", "a1", "a1 b1", "--algebraic")
    assert code == 0 and text.splitlines()[0] == "1" and text.splitlines()[1].startswith("algebraic")


@pytest.mark.parametrize("argv", [
    ["intersect", "S1,1", "a1", "q7"],
    ["intersect", "S1,1", "a1", "a1 b1 a1' b1'"],
    ["intersect", "S0,2", "z1", "z1"],
    ["classify", "S1,1", "a1 a1 b1 b1"],
    ["farey-check"],
    ["nonsense"],
    ["map-verify"],
    ["map-verify", "--generate", "S0,5", "--depth", "1"],
    ["map-verify", "/nonexistent/file.map"],
])
def test_bad_input_exits_with_two(argv):
    assert call(*argv)[0] == 2


def test_classify():
    code, text = call("classify", "S1,3", "z1 z2")
    assert code == 0
    assert "type outer" in text


def test_surface_info_and_inventory():
    code, text = call("surface-info", "--inventory", "1")
    assert code == 0 and sorted(text.split()) == ["S0,4", "S1,1"]
    code, text = call("surface-info", "S1,2")
    assert "complexity 2" in text and "half-twist h1" in text


def test_curves_enum_is_deterministic_and_cached(tmp_path, capsys):
    a = call("curves-enum", "S0,5", "--depth", "2")
    b = call("curves-enum", "S0,5", "--depth", "2")
    assert a == b and a[1].startswith("S0,5 depth=2\n")
    call("curves-enum", "S0,5", "--depth", "2", "--cache-dir", str(tmp_path), "--stats")
    first = capsys.readouterr().err
    assert "cache_writes=1" in first
    code, text = call("curves-enum", "S0,5", "--depth", "2", "--cache-dir", str(tmp_path), "--stats")
    second = capsys.readouterr().err
    assert "generator_applications=0" in second and "cache_hits=1" in second
    assert text == a[1]


def test_pants_adjacency():
    code, text = call("pants-adjacency", "S0,6", "z1 z2", "z3 z4", "z1 z2 z3 z4")
    assert code == 0
    assert "pants-decomposition yes" in text
    assert sum(line.startswith("edge") for line in text.splitlines()) == 3
    code, text = call("pants-adjacency", "S0,5", "--census", "--depth", "1")
    assert code == 0 and "graph-classes 1" in text


def test_farey_check():
    code, text = call("farey-check", "--radius", "3")
    assert code == 0
    assert len(text.splitlines()) == 4
    code, text = call("farey-check", "--radius", "2", "--exact", "--dump", "--center", "1/2")
    assert code == 0 and "  edge " in text


def test_map_verify_generated_map_passes():
    code, text = call("map-verify", "--generate", "S0,5", "--seed", "3", "--depth", "1")
    assert code == 0
    assert text.startswith("# generated by")
    assert "L13 pass" in text


def test_map_verify_rejects_type_violation(tmp_path):
    p = tmp_path / "bad.map"
    p.write_text("S1,3 -> S1,3\nz1 z2 => a1\n")
    code, text = call("map-verify", str(p))
    assert code == 1
    assert "L11 fail [z1 z2] -> [a1]" in text


def test_map_fit(tmp_path):
    code, text = call("map-fit", "--generate", "S1,1", "--seed", "1", "--depth", "3", "--length", "3", "--maxlen", "3")
    assert code == 0 and "status fitted" in text and "residual kernel" in text
    p = tmp_path / "bad.map"
    p.write_text("S0,5 -> S0,5\nz1 z2 => z1 z2\nz3 z4 => z1 z2\n")
    code, text = call("map-fit", str(p), "--maxlen", "2")
    assert code == 1 and "status property-violation" in text


def test_kernel_scan():
    code, text = call("kernel-scan", "S1,1", "--maxlen", "2", "--depth", "3")
    assert code == 0
    assert "fixes-window=yes inner=no" in text
    assert "nontrivial=0" in text


@pytest.mark.skipif(shutil.which("curvecomplex") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["curvecomplex", "intersect", "S1,1", "a1", "b1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "1\n"
    r = subprocess.run([sys.executable, "-m", "curvecomplex.cli", "intersect", "S1,1", "a1", "z9"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and r.stderr.startswith("error:")
