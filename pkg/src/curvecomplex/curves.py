"""Curves on a spine model: validation, intersection numbers, cutting and filling."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .drawing import Component, Drawing
from .intersection import linked_pair_intersection, linked_pair_self_intersection
from .spine import SpineModel, spine_model
from .surface import SurfaceType, complexity
from .words import Word, abelianization, canonical, cyclic_reduce


class InvalidCurve(ValueError):
    """A word that is trivial, peripheral or not simple."""


class ModelMismatch(ValueError):
    """Curves from different spine models were combined."""


class CurveType(enum.Enum):
    NON_SEPARATING = "non-separating"
    OUTER = "outer"
    SEPARATING = "separating-non-outer"

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class Curve:
    """A validated curve: canonical word of a simple, essential, non-peripheral class.

    Build instances with :func:`make_curve` or :meth:`parse`; the constructor
    trusts its arguments.
    """

    surface: SurfaceType
    word: Word

    @property
    def model(self) -> SpineModel:
        return spine_model(self.surface)

    @classmethod
    def parse(cls, model: SpineModel | SurfaceType | str, text: str) -> "Curve":
        m = model if isinstance(model, SpineModel) else spine_model(model)
        return make_curve(m, m.parse(text))

    def __str__(self):
        return self.model.format(self.word)

    def __len__(self):
        return len(self.word)


def canonicalize(model: SpineModel, w: Iterable[int] | str) -> Word:
    """Canonical form of a raw letter sequence or literal, checked against the alphabet."""
    letters = model.parse(w) if isinstance(w, str) else tuple(w)
    model.check_word(letters)
    return canonical(letters)


def self_intersection(model: SpineModel, w: Iterable[int]) -> int:
    r = cyclic_reduce(w)
    if not r:
        raise InvalidCurve("the trivial class has no self-intersection number")
    return _self_intersection(model.surface, canonical(r))


@lru_cache(maxsize=1 << 16)
def _self_intersection(surface: SurfaceType, w: Word) -> int:
    return linked_pair_self_intersection(spine_model(surface), w)


def validation_error(model: SpineModel, w: Iterable[int]) -> str | None:
    """Why ``w`` is not a curve, or ``None`` if it is one."""
    letters = tuple(w)
    model.check_word(letters)
    c = canonical(letters)
    if not c:
        return "trivial"
    if model.is_peripheral(c):
        return "peripheral"
    if self_intersection(model, c):
        return "not simple"
    return None


def make_curve(model: SpineModel, w: Iterable[int]) -> Curve:
    if complexity(model.surface) < 1:
        raise InvalidCurve(f"{model.surface} carries no curves")
    letters = tuple(w)
    err = validation_error(model, letters)
    if err:
        raise InvalidCurve(f"{model.format(letters) or '<empty>'} is {err}")
    return Curve(model.surface, canonical(letters))


def is_peripheral(w: Iterable[int], model: SpineModel) -> bool:
    return model.is_peripheral(canonical(w))


def _same_model(*curves: Curve) -> SurfaceType:
    surfaces = {c.surface for c in curves}
    if len(surfaces) != 1:
        raise ModelMismatch(f"curves live on different surfaces: {sorted(map(str, surfaces))}")
    return surfaces.pop()


def geometric_intersection(c1: Curve, c2: Curve) -> int:
    s = _same_model(c1, c2)
    if c1.word == c2.word:
        return 0
    a, b = (c1.word, c2.word) if c1.word <= c2.word else (c2.word, c1.word)
    return _iota(s, a, b)


@lru_cache(maxsize=1 << 20)
def _iota(surface: SurfaceType, a: Word, b: Word) -> int:
    return linked_pair_intersection(spine_model(surface), a, b)


def algebraic_intersection(c1: Curve, c2: Curve) -> int:
    """Homological intersection of the curves, each oriented along its canonical word."""
    s = _same_model(c1, c2)
    m = spine_model(s)
    form = m.intersection_form
    v1 = abelianization(c1.word, m.rank)
    v2 = abelianization(c2.word, m.rank)
    return sum(v1[i] * form[i][j] * v2[j] for i in range(m.rank) for j in range(m.rank) if v1[i] and v2[j])


# -- cutting ---------------------------------------------------------------------------


def check_multicurve(curves: Iterable[Curve]) -> list[Curve]:
    cs = sorted(set(curves))
    if not cs:
        return cs
    _same_model(*cs)
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if geometric_intersection(cs[i], cs[j]):
                raise InvalidCurve(f"{cs[i]} and {cs[j]} intersect; not a multicurve")
    if len(cs) > complexity(cs[0].surface):
        raise InvalidCurve("more curves than the complexity allows")
    return cs


def cut_components(model: SpineModel, curves: list[Curve]) -> list[Component]:
    """Components of the surface cut along pairwise disjoint curves.

    Boundary circles of the pieces remember which curve (by index into
    ``curves``) or which original boundary component they come from.
    """
    d = Drawing(model, [c.word for c in curves], disjoint=True)
    comps = d.cut_complex().components()
    if sum(c.euler for c in comps) != model.surface.euler_characteristic:
        raise AssertionError("Euler characteristic not conserved by cutting")
    return comps


def component_type(comp: Component) -> SurfaceType:
    return SurfaceType.from_euler(comp.euler, len(comp.boundaries))


def cut_along(model: SpineModel, q: Iterable[Curve]) -> list[tuple[SurfaceType, frozenset[int]]]:
    """Types of the pieces of the cut surface with the original boundary components each contains.

    Boundary components are numbered from 0; the outer boundary (the one not
    encircled by a ``z`` generator) is last.
    """
    cs = check_multicurve(q)
    if cs and cs[0].surface != model.surface:
        raise ModelMismatch("multicurve does not live on this model")
    out = [(component_type(k), k.originals) for k in cut_components(model, cs)]
    return sorted(out, key=lambda t: (t[0], sorted(t[1])))


def curve_type(c: Curve) -> CurveType:
    return _curve_type(c.surface, c.word)


@lru_cache(maxsize=1 << 18)
def _curve_type(surface: SurfaceType, w: Word) -> CurveType:
    quick = _curve_type_from_homology(surface, w)
    return quick if quick is not None else curve_type_by_cutting(Curve(surface, w))


def curve_type_by_cutting(c: Curve) -> CurveType:
    pieces = cut_along(c.model, [c])
    if len(pieces) == 1:
        return CurveType.NON_SEPARATING
    if any(t == SurfaceType(0, 3) and len(orig) == 2 for t, orig in pieces):
        return CurveType.OUTER
    return CurveType.SEPARATING


def _curve_type_from_homology(surface: SurfaceType, w: Word) -> CurveType | None:
    """Type read off the homology class when that determines it, else ``None``.

    A simple curve separates exactly when its class lies in the span of the
    boundary loops ``z_j``; it is then the signed sum of the ``z_j`` on the
    side away from the outer boundary.  Counting the boundary components on
    each side settles most cases, since a piece with at most one original
    boundary component must carry genus.
    """
    g, b = surface.genus, surface.boundary
    v = abelianization(w, 2 * g + b - 1)
    if any(v[:2 * g]):
        return CurveType.NON_SEPARATING
    nz = {x for x in v[2 * g:] if x}
    if not nz <= {1} and not nz <= {-1}:
        return None
    k_in = len([x for x in v[2 * g:] if x])
    k_out = b - k_in
    if 2 not in (k_in, k_out):
        return CurveType.SEPARATING
    if g == 0:
        return CurveType.OUTER
    if g == 1:
        if k_in <= 1:
            return CurveType.OUTER if k_out == 2 else CurveType.SEPARATING
        if k_out <= 1:
            return CurveType.OUTER if k_in == 2 else CurveType.SEPARATING
    return None


def is_separating(c: Curve) -> bool:
    return curve_type(c) is not CurveType.NON_SEPARATING


# -- filling ---------------------------------------------------------------------------


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        parent[find(i)] = find(j)
    return len({find(i) for i in range(n)}) == 1


def filled_subsurface(cs: Iterable[Curve]) -> SurfaceType | None:
    """Type of the subsurface filled by the curves, or ``None``.

    ``None`` is returned when the union of minimal-position representatives is
    disconnected or when the filled subsurface has complexity below one (a
    single curve fills only an annulus).
    """
    curves = sorted(set(cs))
    if not curves:
        raise ValueError("need at least one curve")
    surface = _same_model(*curves)
    if len(curves) == 1:
        return None
    pairs = [(i, j) for i in range(len(curves)) for j in range(i + 1, len(curves))
             if geometric_intersection(curves[i], curves[j])]
    if not _connected(len(curves), pairs):
        return None
    return _fill(surface, tuple(c.word for c in curves))


@lru_cache(maxsize=1 << 14)
def _fill(surface: SurfaceType, ws: tuple[Word, ...]) -> SurfaceType | None:
    model = spine_model(surface)
    d = Drawing(model, list(ws))
    expected = sum(_iota(surface, *sorted((ws[i], ws[j])))
                   for i in range(len(ws)) for j in range(i + 1, len(ws)))
    drawn = sum(d.crossing_count(i, j) for i in range(len(ws)) for j in range(i + 1, len(ws)))
    if drawn != expected:
        raise AssertionError("drawing is not in minimal position")
    chi = model.surface.euler_characteristic
    n_bnd = 0
    for comp in d.cut_complex().components():
        nb = len(comp.boundaries)
        if comp.euler == 1 and nb == 1:
            continue  # complementary disc
        if comp.euler == 0 and nb == 2 and sum(b.original is not None for b in comp.boundaries) == 1:
            n_bnd += 1  # peripheral annulus; its outer circle is a boundary of the fill
            continue
        chi -= comp.euler
        n_bnd += sum(1 for b in comp.boundaries if b.original is None)
    f = SurfaceType.from_euler(chi, n_bnd)
    return f if complexity(f) >= 1 else None
