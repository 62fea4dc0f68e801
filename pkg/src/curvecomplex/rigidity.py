"""Checks on finite vertex maps between curve complexes, and recovery of inducing mapping classes.

A vertex map assigns to each curve of a finite window a curve on a second
model.  The battery evaluates, on every configuration the window contains,
the conclusions that any simplicial, star-injective map of curve complexes
must satisfy: pants decompositions and small intersection go to the same,
adjacency graphs are preserved, curve types are preserved, complexity-one
subsurfaces keep their type, and minimal intersection keeps its type.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Sequence

import networkx as nx
import numpy as np

from .complex import (
    MinimalIntersection,
    _cliques,
    adjacency_graph,
    minimal_intersection_type,
)
from .curves import (
    Curve,
    CurveType,
    InvalidCurve,
    ModelMismatch,
    cut_along,
    curve_type,
    filled_subsurface,
    geometric_intersection,
    make_curve,
)
from .intersection import WordTable
from .mapping import (
    MappingClass,
    apply,
    apply_symbol,
    compose,
    generator_set,
    invert,
    is_inner,
)
from .spine import spine_model
from .surface import SurfaceType, complexity

_TWO_HOLED_TORUS = SurfaceType(1, 2)
_SMALL = (SurfaceType(0, 4), SurfaceType(1, 1))


# -- vertex maps -----------------------------------------------------------------------


@dataclass
class VertexMap:
    """A finite map on curves.

    ``preserve_separating`` records the extra hypothesis that the map keeps
    the separating type of every curve; it only matters between two-holed tori.
    """

    source: SurfaceType
    target: SurfaceType
    assignment: dict
    preserve_separating: bool = False

    def __post_init__(self):
        for c, d in self.assignment.items():
            if c.surface != self.source or d.surface != self.target:
                raise ModelMismatch(f"{c} => {d} does not map {self.source} to {self.target}")

    @property
    def domain(self) -> list[Curve]:
        return sorted(self.assignment, key=lambda c: (len(c.word), c.word))

    def __call__(self, c: Curve) -> Curve:
        return self.assignment[c]

    def __len__(self):
        return len(self.assignment)

    @classmethod
    def from_mapping_class(cls, f: MappingClass, curves: Iterable[Curve]) -> "VertexMap":
        return cls(f.surface, f.surface, {c: apply(f, c) for c in curves}, preserve_separating=True)

    @classmethod
    def from_function(cls, source, target, curves: Iterable[Curve], fn: Callable[[Curve], Curve],
                      preserve_separating: bool = False) -> "VertexMap":
        return cls(source, target, {c: fn(c) for c in curves}, preserve_separating)

    def dumps(self) -> str:
        ms, mt = spine_model(self.source), spine_model(self.target)
        lines = [f"{self.source} -> {self.target}"]
        lines += [f"{ms.format(c.word)} => {mt.format(self.assignment[c].word)}" for c in self.domain]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, preserve_separating: bool = False) -> "VertexMap":
        lines = [ln.strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty vertex map")
        try:
            src, tgt = (SurfaceType.parse(x.strip()) for x in lines[0].split("->"))
        except ValueError as e:
            raise ValueError(f"bad vertex-map header {lines[0]!r}: expected 'S{{g}},{{b}} -> S{{g}},{{b}}'") from e
        ms, mt = spine_model(src), spine_model(tgt)
        out = {}
        for n, ln in enumerate(lines[1:], 2):
            if "=>" not in ln:
                raise ValueError(f"line {n}: expected '<curve> => <curve>'")
            a, b = ln.split("=>")
            c, d = make_curve(ms, ms.parse(a)), make_curve(mt, mt.parse(b))
            if c in out and out[c] != d:
                raise ValueError(f"line {n}: {a.strip()} is assigned twice")
            out[c] = d
        return cls(src, tgt, out, preserve_separating)

    @classmethod
    def load(cls, path: str | os.PathLike, preserve_separating: bool = False) -> "VertexMap":
        return cls.loads(Path(path).read_text(), preserve_separating)


# -- reports ---------------------------------------------------------------------------

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class Verdict:
    label: str
    status: str
    checked: int = 0
    witness: tuple = ()
    note: str = ""

    def line(self) -> str:
        parts = [self.label, self.status]
        if self.status == FAIL:
            parts.append(" ".join(self.witness))
        elif self.status == PASS:
            parts.append(f"checked={self.checked}")
        elif self.note:
            parts.append(self.note)
        return " ".join(parts)


@dataclass
class PropertyReport:
    verdicts: list = field(default_factory=list)

    def add(self, v: Verdict) -> None:
        self.verdicts.append(v)

    def __getitem__(self, label: str) -> Verdict:
        for v in self.verdicts:
            if v.label == label:
                return v
        raise KeyError(label)

    @property
    def ok(self) -> bool:
        return all(v.status != FAIL for v in self.verdicts)

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == FAIL]

    def lines(self) -> list[str]:
        return [v.line() for v in self.verdicts]

    def __str__(self):
        return "\n".join(self.lines())


class _Checker:
    """Accumulates one verdict: counts configurations, keeps the first failure."""

    def __init__(self, label: str):
        self.label = label
        self.checked = 0
        self.witness: tuple | None = None

    def __call__(self, ok: bool, witness: Callable[[], tuple]) -> bool:
        self.checked += 1
        if not ok and self.witness is None:
            self.witness = tuple(witness())
        return ok

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def verdict(self, applicable: bool = True, note: str = "") -> Verdict:
        if not applicable:
            return Verdict(self.label, NA, note=note)
        if self.witness is not None:
            return Verdict(self.label, FAIL, self.checked, self.witness)
        if self.checked == 0:
            return Verdict(self.label, NA, note="no configurations in window")
        return Verdict(self.label, PASS, self.checked)


def _fmt(c: Curve) -> str:
    return f"[{c}]"


# -- source-side analysis, shared by every map on the same window ---------------------


class _Window:
    """Configurations of a finite set of curves on one model."""

    def __init__(self, curves: Sequence[Curve]):
        self.curves = list(curves)
        self.surface = self.curves[0].surface if self.curves else None
        self.kappa = complexity(self.surface) if self.curves else 0
        self.index = {c: i for i, c in enumerate(self.curves)}
        n = len(self.curves)
        self.disjoint: dict[int, set[int]] = {i: set() for i in range(n)}
        self.iota_small: dict[tuple[int, int], int] = {}
        if n:
            table = WordTable(spine_model(self.surface), [c.word for c in self.curves])
            for i in range(n):
                js = np.arange(i + 1, n, dtype=np.int64)
                row = table.row(i, js, cap=2)
                for j, x in zip(js, row):
                    j = int(j)
                    if x == 0:
                        self.disjoint[i].add(j)
                        self.disjoint[j].add(i)
                    elif x <= 2:
                        self.iota_small[(i, j)] = int(x)
        self._cache: dict = {}

    def adjacent(self, i: int, j: int) -> bool:
        """Complex adjacency of distinct window curves."""
        if self.kappa == 1:
            a, b = min(i, j), max(i, j)
            return (a, b) in self.iota_small and self.minimal(a, b) is not MinimalIntersection.NONE
        return j in self.disjoint[i]

    def neighbours(self, i: int) -> list[int]:
        if self.kappa == 1:
            return [j for j in range(len(self.curves)) if j != i and self.adjacent(i, j)]
        return sorted(self.disjoint[i])

    def minimal(self, i: int, j: int) -> MinimalIntersection:
        key = ("min", i, j)
        if key not in self._cache:
            self._cache[key] = minimal_intersection_type(self.curves[i], self.curves[j])
        return self._cache[key]

    def multicurves(self, size: int) -> list[tuple[int, ...]]:
        key = ("mc", size)
        if key not in self._cache:
            self._cache[key] = list(_cliques(self.disjoint, list(range(len(self.curves))), size))
        return self._cache[key]

    def graph(self, q: tuple[int, ...]) -> frozenset:
        key = ("g", q)
        if key not in self._cache:
            g = adjacency_graph([self.curves[i] for i in q])
            self._cache[key] = frozenset(frozenset((self.index[a], self.index[b])) for a, b in g.edges)
        return self._cache[key]

    def types(self) -> list[CurveType]:
        if "types" not in self._cache:
            self._cache["types"] = [curve_type(c) for c in self.curves]
        return self._cache["types"]

    def small_pairs(self) -> list[tuple[int, int, SurfaceType]]:
        """Intersecting pairs filling a four-holed sphere or a one-holed torus."""
        if "small" not in self._cache:
            out = []
            n = len(self.curves)
            for i in range(n):
                for j in range(i + 1, n):
                    if j in self.disjoint[i]:
                        continue
                    f = filled_subsurface([self.curves[i], self.curves[j]])
                    if f in _SMALL:
                        out.append((i, j, f))
            self._cache["small"] = out
        return self._cache["small"]

    def one_sided_pieces(self) -> list[tuple[int, SurfaceType, tuple[int, ...]]]:
        """(border curve, piece type, window curves inside) for complexity-one pieces cut off by one curve."""
        if "pieces" not in self._cache:
            out = []
            for b, beta in enumerate(self.curves):
                pieces = cut_along(beta.model, [beta])
                if len(pieces) != 2:
                    continue
                for t, orig in pieces:
                    if complexity(t) != 1:
                        continue
                    inside = tuple(g for g in sorted(self.disjoint[b])
                                   if (t, orig) not in cut_along(beta.model, [beta, self.curves[g]]))
                    out.append((b, t, inside))
            self._cache["pieces"] = out
        return self._cache["pieces"]

    def common_complement(self, i: int, j: int) -> tuple[int, ...]:
        """A multicurve of size complexity - 1 disjoint from curves ``i`` and ``j``, or ``()``."""
        key = ("cc", i, j)
        if key not in self._cache:
            among = self.disjoint[i] & self.disjoint[j]
            size = self.kappa - 1
            q = next(_cliques(self.disjoint, sorted(among), size, among=among), ()) if size and among else ()
            self._cache[key] = q
        return self._cache[key]

    def fill(self, idx: tuple[int, ...]) -> SurfaceType | None:
        key = ("fill", idx)
        if key not in self._cache:
            self._cache[key] = filled_subsurface([self.curves[i] for i in idx])
        return self._cache[key]


_WINDOWS: dict = {}


def _window(curves: list[Curve]) -> _Window:
    key = tuple(curves)
    w = _WINDOWS.get(key)
    if w is None:
        if len(_WINDOWS) > 16:
            _WINDOWS.clear()
        w = _WINDOWS[key] = _Window(curves)
    return w


class _Images:
    """Target-side quantities for the images of a window, computed on demand."""

    def __init__(self, v: VertexMap, win: _Window):
        self.win = win
        self.images = [v(c) for c in win.curves]
        self.kappa = complexity(v.target)
        self._iota: dict = {}
        self._table = None

    def iota_capped(self, i: int, j: int, cap: int = 2) -> int:
        a, b = self.images[i], self.images[j]
        if a == b:
            return 0
        key = (min(i, j), max(i, j))
        if key not in self._iota:
            self._iota[key] = geometric_intersection(a, b) if cap < 0 else _capped(a, b, cap)
        return self._iota[key]

    def disjoint(self, i: int, j: int) -> bool:
        return self.images[i] != self.images[j] and self.iota_capped(i, j) == 0

    def fills_complexity_one(self, i: int, j: int, q: tuple[int, ...]) -> bool:
        """Sufficient test that images ``i`` and ``j`` fill a complexity-one subsurface.

        Two crossing curves that both miss ``complexity - 1`` distinct disjoint
        curves fill a subsurface of complexity at most one, hence exactly one.
        """
        if self.images[i] == self.images[j] or self.iota_capped(i, j) == 0:
            return False
        need = self.kappa - 1
        imgs = {self.images[k]: k for k in q}
        if len(imgs) < need:
            return False
        ks = list(imgs.values())[:need]
        return (all(self.disjoint(k, i) and self.disjoint(k, j) for k in ks)
                and all(self.disjoint(k, m) for k, m in combinations(ks, 2)))

    def adjacent(self, i: int, j: int) -> bool:
        a, b = self.images[i], self.images[j]
        if a == b:
            return False
        if self.kappa == 1:
            return minimal_intersection_type(a, b) is not MinimalIntersection.NONE
        return self.iota_capped(i, j) == 0


def _capped(a: Curve, b: Curve, cap: int) -> int:
    from .intersection import linked_pair_intersection
    x = linked_pair_intersection(a.model, a.word, b.word, cap=cap)
    return x if x <= cap else cap + 1


# -- the checks --------------------------------------------------------------------------


def _pair_witness(win: _Window, im: _Images, i: int, j: int, what: str) -> tuple:
    return (_fmt(win.curves[i]), _fmt(win.curves[j]), "->", _fmt(im.images[i]), _fmt(im.images[j]), what)


def _simplicial(win: _Window, im: _Images) -> Verdict:
    chk = _Checker("simplicial")
    n = len(win.curves)
    for i in range(n):
        for j in win.neighbours(i):
            if j > i:
                chk(im.images[i] == im.images[j] or im.adjacent(i, j),
                    lambda: _pair_witness(win, im, i, j, "adjacent pair sent to non-adjacent pair"))
                if chk.failed:
                    return chk.verdict()
    return chk.verdict()


def _star_injective(win: _Window, im: _Images) -> Verdict:
    chk = _Checker("star-injective")
    for i in range(len(win.curves)):
        star = [i] + win.neighbours(i)
        seen: dict = {}
        for j in star:
            d = im.images[j]
            k = seen.setdefault(d, j)
            ok = chk(k == j, lambda: (_fmt(win.curves[i]), "star contains", _fmt(win.curves[k]),
                                      _fmt(win.curves[j]), "both ->", _fmt(d)))
            if not ok:
                return chk.verdict()
    return chk.verdict()


def check_simplicial(v: VertexMap) -> PropertyReport:
    win = _window(v.domain)
    r = PropertyReport()
    r.add(_simplicial(win, _Images(v, win)))
    return r


def check_star_injective(v: VertexMap) -> PropertyReport:
    win = _window(v.domain)
    r = PropertyReport()
    r.add(_star_injective(win, _Images(v, win)))
    return r


def _hypothesis_equal_or_bigger(v: VertexMap) -> tuple[bool, str]:
    """Standing hypothesis of the type-preservation results."""
    k1, k2 = complexity(v.source), complexity(v.target)
    if k1 < k2:
        return False, "source complexity below target"
    if k1 == k2 and k1 <= 3:
        if v.source != v.target:
            return False, "equal low complexity, different surfaces"
        if v.source == _TWO_HOLED_TORUS and not v.preserve_separating:
            return False, "two-holed torus without preserve-separating flag"
    return True, ""


def run_lemma_battery(v: VertexMap, stop_on_failure: bool = False) -> PropertyReport:
    """Evaluate every check on all configurations of the domain window.

    Lines ``simplicial`` and ``star-injective`` report the preconditions; the
    remaining lines are numbered ``L5`` to ``L14``.
    """
    report = PropertyReport()
    win = _window(v.domain)
    im = _Images(v, win)
    report.add(_simplicial(win, im))
    report.add(_star_injective(win, im))
    if stop_on_failure and not report.ok:
        return report
    k1, k2 = complexity(v.source), complexity(v.target)
    dim_ok = k1 >= k2
    types_ok, why = _hypothesis_equal_or_bigger(v)
    n = len(win.curves)

    def done(verdict: Verdict) -> bool:
        report.add(verdict)
        return stop_on_failure and verdict.status == FAIL

    # pants decompositions go to pants decompositions
    chk = _Checker("L5")
    pants = win.multicurves(k1) if n and dim_ok else []
    pants_ok = []
    for p in pants:
        imgs = {im.images[i] for i in p}
        ok = len(imgs) == k2 and all(im.disjoint(i, j) for i, j in combinations(p, 2))
        chk(ok, lambda: tuple(_fmt(win.curves[i]) for i in p) + ("->",) + tuple(_fmt(im.images[i]) for i in p)
            + ("image is not a pants decomposition",))
        if ok:
            pants_ok.append(p)
    if done(chk.verdict(dim_ok, "source complexity below target")):
        return report

    # small intersection is preserved
    chk = _Checker("L6")
    if dim_ok:
        for i, j, _t in win.small_pairs():
            if im.fills_complexity_one(i, j, win.common_complement(i, j)):
                chk(True, tuple)
                continue
            f = filled_subsurface([im.images[i], im.images[j]]) if im.images[i] != im.images[j] else None
            chk(f in _SMALL, lambda: _pair_witness(win, im, i, j, f"image fills {f}"))
            if chk.failed:
                break
    if done(chk.verdict(dim_ok, "source complexity below target")):
        return report

    # adjacency and non-adjacency inside pants decompositions
    chk = _Checker("L7")
    for p in pants_ok if k1 >= 2 else []:
        g1 = win.graph(p)
        g2 = _image_graph(im, p)
        for i, j in combinations(p, 2):
            e = frozenset((i, j))
            chk((e in g1) == (e in g2), lambda: _pair_witness(
                win, im, i, j, "adjacency in the decomposition changed"))
        if chk.failed:
            break
    if done(chk.verdict(dim_ok, "source complexity below target")):
        return report

    # adjacency graphs of multicurves
    chk = _Checker("L8")
    if dim_ok and k1 >= 2:
        for size in range(2, k1 + 1):
            for q in win.multicurves(size):
                if any(not im.disjoint(i, j) for i, j in combinations(q, 2)):
                    continue  # not a multicurve image; the simplicial line reports it
                g1, g2 = win.graph(q), _image_graph(im, q)
                chk(g1 == g2, lambda: tuple(_fmt(win.curves[i]) for i in q) + ("->",)
                    + tuple(_fmt(im.images[i]) for i in q) + ("adjacency graph changed",))
                if chk.failed:
                    break
            if chk.failed:
                break
    if done(chk.verdict(dim_ok, "source complexity below target")):
        return report

    # curve types
    types = win.types() if n else []
    for label, src_type, applicable, note in (
            ("L9", CurveType.SEPARATING, dim_ok, "source complexity below target"),
            ("L10", CurveType.NON_SEPARATING, types_ok, why),
            ("L11", CurveType.OUTER, types_ok, why)):
        chk = _Checker(label)
        if applicable:
            for i in range(n):
                if types[i] is src_type:
                    t2 = curve_type(im.images[i])
                    chk(t2 is src_type, lambda: (_fmt(win.curves[i]), "->", _fmt(im.images[i]),
                                                 f"{src_type} sent to {t2}"))
                    if chk.failed:
                        break
        if done(chk.verdict(applicable, note)):
            return report

    # complexity-one subsurfaces cut off by one curve keep their type
    pieces = win.one_sided_pieces() if n and k1 >= 2 else []
    chk = _Checker("L12")
    if types_ok:
        for b, t, inside in pieces:
            if len(inside) < 2 or win.fill(inside) != t:
                continue
            imgs = [im.images[g] for g in inside]
            f = filled_subsurface(imgs) if len(set(imgs)) > 1 else None
            chk(f == t, lambda: ("border", _fmt(win.curves[b]), f"piece {t}", "image curves fill", str(f)))
            if chk.failed:
                break
    if done(chk.verdict(types_ok, why)):
        return report

    # no cross-embeddings
    if v.source == v.target:
        verdict = Verdict("L13", PASS, 1)
    else:
        verdict = Verdict("L13", FAIL, 1, (str(v.source), "->", str(v.target), "surfaces are not homeomorphic"))
    if done(verdict):
        return report

    # minimal intersection and its type inside such pieces
    chk = _Checker("L14")
    l14_ok = v.source == v.target and v.source != _TWO_HOLED_TORUS
    if l14_ok:
        for b, t, inside in pieces:
            for i, j in combinations(inside, 2):
                m1 = win.minimal(i, j) if (i, j) in win.iota_small else MinimalIntersection.NONE
                if m1 is MinimalIntersection.NONE:
                    continue
                a, c = im.images[i], im.images[j]
                m2 = minimal_intersection_type(a, c) if a != c else MinimalIntersection.NONE
                chk(m1 is m2, lambda: _pair_witness(win, im, i, j, f"{m1} became {m2}"))
                if chk.failed:
                    break
            if chk.failed:
                break
    note = "self-maps only" if v.source != v.target else "excluded on the two-holed torus"
    done(chk.verdict(l14_ok, note))
    return report


def _image_graph(im: _Images, q: tuple[int, ...]) -> frozenset:
    curves = [im.images[i] for i in q]
    back = {c: i for i, c in zip(q, curves)}
    g = adjacency_graph(curves)
    return frozenset(frozenset((back[a], back[b])) for a, b in g.edges)


# -- the fitter ------------------------------------------------------------------------


@dataclass
class FitResult:
    status: str  # "fitted", "no-fit-within-bound" or "property-violation"
    mapping_class: MappingClass | None = None
    report: PropertyReport | None = None
    residual: "KernelCertificate | None" = None
    candidates_checked: int = 0

    def lines(self) -> list[str]:
        out = [f"status {self.status}"]
        if self.mapping_class is not None:
            out.append(f"word {self.mapping_class}")
        if self.residual is not None:
            out.append(self.residual.line())
        if self.report is not None and self.status == "property-violation":
            out += self.report.lines()
        return out


@dataclass
class KernelCertificate:
    """Outcome of testing whether a class fixes every curve of a window."""

    in_kernel: bool
    checked: int
    moved: Curve | None = None
    image: Curve | None = None
    iota_with_alpha: int | None = None

    def line(self) -> str:
        if self.in_kernel:
            return f"residual kernel checked={self.checked}"
        extra = f" iota={self.iota_with_alpha}" if self.iota_with_alpha is not None else ""
        return f"residual moves {_fmt(self.moved)} -> {_fmt(self.image)}{extra}"


def _symbol_key(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


def _reduced_words(symbols: tuple[int, ...], length: int) -> list[tuple[int, ...]]:
    """Reduced words of one length in shortlex order."""
    words: list[tuple[int, ...]] = [()]
    for _ in range(length):
        words = [w + (x,) for w in words for x in symbols if not (w and w[-1] == -x)]
    return words


def _probe_set(domain: list[Curve], k: int) -> list[Curve]:
    return domain[:k]


def fit_mapping_class(v: VertexMap, maxlen: int, probes: int = 6, battery: bool = True,
                      reference: MappingClass | None = None) -> FitResult:
    """Shortlex-least generator word of length at most ``maxlen`` agreeing with ``v`` on its domain.

    Words are split as ``g h`` (``h`` applied first) with ``|g| - |h|`` in
    {0, 1}; both halves are tabulated by their action on a few probe curves,
    matching halves give candidates, and candidates are checked on the whole
    domain in shortlex order.
    """
    if v.source != v.target:
        raise ModelMismatch(f"no mapping class takes {v.source} to {v.target}")
    if maxlen < 0:
        raise ValueError("maxlen must be non-negative")
    if battery:
        rep = run_lemma_battery(v, stop_on_failure=True)
        if not rep.ok:
            return FitResult("property-violation", report=rep)
    s = v.source
    domain = v.domain
    if not domain:
        return FitResult("fitted", MappingClass.identity(s))
    probe = _probe_set(domain, probes)
    targets = tuple(v(c).word for c in probe)
    syms = generator_set(s).symbols
    half = (maxlen + 1) // 2

    # right halves: images of the probes; left halves: preimages of the targets
    right: list[dict] = []
    left: list[dict] = []
    r_prev = {(): tuple(c.word for c in probe)}
    l_prev = {(): targets}
    right.append(r_prev)
    left.append(l_prev)
    for _ in range(half):
        r_next, l_next = {}, {}
        for h, ims in r_prev.items():
            for x in syms:
                if h and h[0] == -x:
                    continue
                r_next[(x,) + h] = tuple(apply_symbol(s, x, w) for w in ims)
        for g, pre in l_prev.items():
            for x in syms:
                if g and g[-1] == -x:
                    continue
                l_next[g + (x,)] = tuple(apply_symbol(s, -x, w) for w in pre)
        right.append(r_next)
        left.append(l_next)
        r_prev, l_prev = r_next, l_next

    checked = 0
    for length in range(maxlen + 1):
        lg, lh = (length + 1) // 2, length // 2
        index: dict = {}
        for h, ims in right[lh].items():
            index.setdefault(ims, []).append(h)
        cands = []
        for g, pre in left[lg].items():
            for h in index.get(pre, ()):
                if g and h and g[-1] == -h[0]:
                    continue
                cands.append(g + h)
        cands.sort(key=lambda w: [_symbol_key(x) for x in w])
        for w in cands:
            checked += 1
            f = MappingClass(s, w)
            if all(apply(f, c) == v(c) for c in domain):
                res = None
                if reference is not None:
                    res = kernel_certificate(compose(invert(f), reference), domain)
                return FitResult("fitted", f, residual=res, candidates_checked=checked)
    return FitResult("no-fit-within-bound", candidates_checked=checked)


# -- kernel and edge consistency -------------------------------------------------------


def kernel_certificate(f: MappingClass, curves: Iterable[Curve], alpha: Curve | None = None) -> KernelCertificate:
    curves = list(curves)
    moved = [(c, apply(f, c)) for c in curves]
    moved = [(c, d) for c, d in moved if c != d]
    if not moved:
        return KernelCertificate(True, len(curves))
    if alpha is not None:
        crossing = [(c, d) for c, d in moved if geometric_intersection(c, alpha) > 0]
        c, d = (crossing or moved)[0]
        return KernelCertificate(False, len(curves), c, d, geometric_intersection(c, alpha))
    c, d = moved[0]
    return KernelCertificate(False, len(curves), c, d)


def kernel_membership(f: MappingClass, s: Iterable[Curve]) -> bool:
    """Whether ``f`` fixes every curve of the window."""
    return all(apply(f, c) == c for c in s)


def edge_consistency(f1: MappingClass, f2: MappingClass, alpha: Curve, s: Iterable[Curve]) -> KernelCertificate:
    """Test ``f1^-1 f2`` on the window; a moved curve is reported, preferring one crossing ``alpha``."""
    if f1.surface != f2.surface or f1.surface != alpha.surface:
        raise ModelMismatch("mapping classes and curve live on different surfaces")
    return kernel_certificate(compose(invert(f1), f2), s, alpha)


def kernel_scan(surface: SurfaceType, maxlen: int, curves: Sequence[Curve],
                symbols: Sequence[int] | None = None, probes: int = 8) -> list[MappingClass]:
    """Non-trivial classes of word length at most ``maxlen`` fixing every window curve.

    A class counts as trivial when its automorphism is inner.  Words come
    out in shortlex order.
    """
    curves = list(curves)
    syms = tuple(symbols) if symbols is not None else generator_set(surface).symbols
    probe = [c.word for c in curves[:probes]]
    out = []
    frontier = {(): tuple(probe)}
    for _ in range(maxlen):
        nxt = {}
        for w, ims in frontier.items():
            for x in syms:
                if w and w[0] == -x:
                    continue
                nxt[(x,) + w] = tuple(apply_symbol(surface, x, u) for u in ims)
        for w in sorted(nxt, key=lambda w: [_symbol_key(x) for x in w]):
            if nxt[w] != tuple(probe):
                continue
            f = MappingClass(surface, w)
            if not kernel_membership(f, curves) or is_inner(f.substitution):
                continue
            out.append(f)
        frontier = nxt
    return out
