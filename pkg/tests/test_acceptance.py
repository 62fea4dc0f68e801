"""Acceptance criteria 1 to 10, each at its stated tolerance and time bound.

Every criterion prints one ``criterion N: PASS|FAIL`` line, both inline and
in the terminal summary.
"""

import io
import itertools
import random
import time
from contextlib import contextmanager

import pytest

from curvecomplex.cli import run
from curvecomplex.complex import curve_set, max_disjoint_separating, pants_census
from curvecomplex.curves import Curve, geometric_intersection
from curvecomplex.farey import Slope, ball, curve_of_slope, local_certificate, slope_det, slope_of_curve
from curvecomplex.mapping import (
    MappingClass,
    apply,
    boundary_permutation,
    compose,
    generator_set,
    hyperelliptic_word,
    involution_words,
    is_inner,
    random_mapping_class,
)
from curvecomplex.rigidity import VertexMap, fit_mapping_class, kernel_membership, kernel_scan, run_lemma_battery
from curvecomplex.surface import SurfaceType, inventory
from conftest import ACCEPTANCE_LINES


@contextmanager
def criterion(n, title, limit=None):
    t0 = time.perf_counter()
    info = {}
    status = "FAIL"
    try:
        yield info
        elapsed = time.perf_counter() - t0
        if limit is not None and elapsed > limit:
            info["why"] = f"took {elapsed:.1f}s, limit {limit}s"
            raise AssertionError(info["why"])
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - t0
        detail = info.get("why") or info.get("detail", "")
        line = f"criterion {n}: {status} {title} ({elapsed:.2f}s) {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)


def test_criterion_01_inventory():
    with criterion(1, "complexity inventory") as info:
        t0 = time.perf_counter()
        got = {k: sorted(map(str, inventory(k))) for k in (1, 2, 3)}
        per_call = (time.perf_counter() - t0) / 3
        assert got == {1: ["S0,4", "S1,1"], 2: ["S0,5", "S1,2"], 3: ["S0,6", "S1,3", "S2,0"]}, got
        assert per_call < 1e-3, per_call
        info["detail"] = f"per-call {per_call * 1e6:.0f}us"


def test_criterion_02_farey_certificates():
    with criterion(2, "Farey local certificates r<=5", limit=10) as info:
        n = 0
        for center in (Slope(0, 1), Slope(1, 0), Slope(3, 7), Slope(-5, 2)):
            for r in range(6):
                cert = local_certificate(ball(center, r))
                assert cert.ok, (center, r, cert)
                n += cert.interior_edges
        info["detail"] = f"interior edges checked={n}"


def test_criterion_03_concordance():
    with criterion(3, "intersection vs Farey determinant", limit=60) as info:
        slopes = sorted({Slope.of(p, q) for p in range(-5, 6) for q in range(-5, 6) if (p, q) != (0, 0)})
        n1 = 0
        for s1, s2 in itertools.combinations(slopes, 2):
            assert geometric_intersection(curve_of_slope(s1), curve_of_slope(s2)) == slope_det(s1, s2), (s1, s2)
            n1 += 1
        assert n1 >= 300
        sphere = {}
        for c in curve_set("S0,4", 3):
            sphere.setdefault(slope_of_curve(c), c)
        missing = [s for s in slopes if s not in sphere]
        assert not missing, missing
        n2 = 0
        for s1, s2 in itertools.combinations(slopes, 2):
            assert geometric_intersection(sphere[s1], sphere[s2]) == 2 * slope_det(s1, s2), (s1, s2)
            n2 += 1
        info["detail"] = f"S1,1 pairs={n1} S0,4 pairs={n2}"


@pytest.mark.parametrize("name", ["S1,1", "S0,5", "S1,2"])
def test_criterion_04_relations(name):
    with criterion(4, f"mapping-class relations on {name}", limit=60) as info:
        s = SurfaceType.parse(name)
        gs = generator_set(s)
        cs = list(curve_set(s, 4))
        twists = [k for k, g in enumerate(gs.generators, 1) if g.kind == "twist"]
        nb = nc = 0
        for i, j in itertools.combinations(twists, 2):
            n = geometric_intersection(gs.generators[i - 1].core, gs.generators[j - 1].core)
            if n == 1:
                lhs, rhs = MappingClass(s, (i, j, i)), MappingClass(s, (j, i, j))
                nb += 1
            elif n == 0:
                lhs, rhs = MappingClass(s, (i, j)), MappingClass(s, (j, i))
                nc += 1
            else:
                continue
            for c in cs:
                assert apply(lhs, c) == apply(rhs, c), (str(lhs), str(rhs), str(c))
        # half-twists satisfy the same relations, their cores meeting twice instead of once
        halves = [k for k, g in enumerate(gs.generators, 1) if g.kind == "half-twist"]
        for i, j in itertools.combinations(halves, 2):
            n = geometric_intersection(gs.generators[i - 1].core, gs.generators[j - 1].core)
            if n not in (0, 2):
                continue
            word = (i, j, i) if n == 2 else (i, j)
            lhs, rhs = MappingClass(s, word), MappingClass(s, tuple(j if x == i else i for x in word))
            for c in cs:
                assert apply(lhs, c) == apply(rhs, c), (str(lhs), str(rhs), str(c))
            nb, nc = (nb + 1, nc) if n == 2 else (nb, nc + 1)
        nt = 0
        for k in twists:
            core = gs.generators[k - 1].core
            t = MappingClass(s, (k,))
            for c in cs:
                n = geometric_intersection(core, c)
                assert geometric_intersection(apply(t, c), c) == n * n, (gs.generators[k - 1].name, str(c))
                nt += 1
        info["detail"] = f"window={len(cs)} braid={nb} commute={nc} twist-checks={nt}"


BATTERY_WINDOWS = [("S0,5", 2), ("S1,2", 2), ("S1,3", 2), ("S0,6", 1)]


def test_criterion_05_battery_soundness():
    with criterion(5, "lemma battery on induced maps", limit=600) as info:
        counts = []
        for name, depth in BATTERY_WINDOWS:
            s = SurfaceType.parse(name)
            cs = list(curve_set(s, depth))
            rng = random.Random(f"battery-{name}")
            for _ in range(50):
                f = random_mapping_class(s, rng.randint(1, 6), rng)
                rep = run_lemma_battery(VertexMap.from_mapping_class(f, cs))
                assert rep.ok, f"{name} {f}\n{rep}"
            counts.append(f"{name}@{depth}:{len(cs)}")
        info["detail"] = "windows " + " ".join(counts)


def test_criterion_06_separating_systems():
    with criterion(6, "max disjoint separating = 2g+b-3") as info:
        got = {}
        for name in ("S0,5", "S1,2", "S1,3"):
            s = SurfaceType.parse(name)
            n, witness = max_disjoint_separating(curve_set(s, 5))
            assert n == 2 * s.genus + s.boundary - 3, (name, n)
            got[name] = n
        info["detail"] = " ".join(f"{k}={v}" for k, v in got.items())


def test_criterion_07_kernel_inventory():
    with criterion(7, "kernel inventory") as info:
        for name in ("S1,1", "S1,2"):
            s = SurfaceType.parse(name)
            h = hyperelliptic_word(s)
            assert kernel_membership(h, curve_set(s, 5)), name
            assert not is_inner(h.substitution)
        s = SurfaceType(0, 4)
        a, b = involution_words(s)
        win = curve_set(s, 5)
        assert kernel_membership(a, win) and kernel_membership(b, win)
        for w in (a, b, compose(a, b)):
            assert not is_inner(w.substitution)
        assert len({boundary_permutation(a), boundary_permutation(b), boundary_permutation(compose(a, b))}) == 3
        s = SurfaceType(0, 5)
        found = kernel_scan(s, 4, list(curve_set(s, 3)))
        assert found == [], [str(f) for f in found]
        info["detail"] = "S0,5 scan maxlen=4 found none"


@pytest.mark.parametrize("name, depth", [("S1,1", 3), ("S0,5", 2)])
def test_criterion_08_fitter_recovery(name, depth):
    with criterion(8, f"fitter recovery on {name}", limit=900) as info:
        s = SurfaceType.parse(name)
        cs = list(curve_set(s, depth))
        rng = random.Random(f"fit-{name}")
        lengths = []
        for _ in range(20):
            f = random_mapping_class(s, rng.randint(1, 4), rng)
            r = fit_mapping_class(VertexMap.from_mapping_class(f, cs), 4, reference=f)
            assert r.status == "fitted", (str(f), r.status)
            assert all(apply(r.mapping_class, c) == apply(f, c) for c in cs)
            assert r.residual.in_kernel
            assert kernel_membership(compose(r.mapping_class, MappingClass(s, tuple(-x for x in reversed(f.word)))), cs)
            lengths.append(len(r.mapping_class))
        info["detail"] = f"fitted lengths {lengths}"


NEGATIVE_MAPS = {
    "L10": ("S1,3 -> S1,3\na1 => z1 z2\n", "L10 fail"),
    "L11": ("S1,3 -> S1,3\nz1 z2 => a1\n", "L11 fail"),
    "simplicial": ("S0,5 -> S0,5\nz1 z2 => z1 z2\nz3 z4 => z2 z3\n", "simplicial fail"),
    "star-injective": ("S0,5 -> S0,5\nz1 z2 => z1 z2\nz3 z4 => z1 z2\n", "star-injective fail"),
}


def test_criterion_09_negative_controls(tmp_path):
    with criterion(9, "negative controls rejected") as info:
        for label, (text, expect) in NEGATIVE_MAPS.items():
            p = tmp_path / f"{label}.map"
            p.write_text(text)
            out = io.StringIO()
            code = run(["map-verify", str(p)], out)
            lines = [ln for ln in out.getvalue().splitlines() if ln.startswith(expect)]
            assert code == 1, (label, code)
            assert lines and "[" in lines[0], (label, out.getvalue())
        info["detail"] = "exit 1 with witnesses: " + ", ".join(NEGATIVE_MAPS)


def test_criterion_10_three_holed_torus_census():
    with criterion(10, "S1,3 census") as info:
        census = pants_census(curve_set("S1,3", 5))
        assert census.n_graph_types == 2, census.n_graph_types
        assert len(census.type_classes) >= 3, list(census.type_classes)
        info["detail"] = (f"decompositions={census.decompositions} type-classes={len(census.type_classes)} "
                          f"graph-types={census.n_graph_types}")
