"""Finite windows of the curve complex and the predicates evaluated on them."""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import networkx as nx
import numpy as np

from .curves import (
    Curve,
    CurveType,
    algebraic_intersection,
    check_multicurve,
    component_type,
    curve_type,
    cut_components,
    filled_subsurface,
    geometric_intersection,
)
from .intersection import WordTable
from .mapping import apply_symbol, generator_set
from .spine import SpineModel, spine_model
from .surface import SurfaceType, complexity


class MinimalIntersection(enum.Enum):
    ONCE = "once"
    TWICE_ZERO_ALGEBRAIC = "twice-zero-algebraic"
    NONE = "none"

    def __str__(self):
        return self.value


class SmallIntersection(enum.Enum):
    FOUR_HOLED_SPHERE = "four-holed-sphere"
    ONE_HOLED_TORUS = "one-holed-torus"
    NONE = "none"

    def __str__(self):
        return self.value


@dataclass
class EnumerationStats:
    generator_applications: int = 0
    cache_hits: int = 0
    cache_writes: int = 0


# -- curve sets ----------------------------------------------------------------------------


def _sort_key(c: Curve):
    return (len(c.word), c.word)


class CurveSet:
    """Deduplicated finite window of curves on one model, in (length, word) order."""

    def __init__(self, surface: SurfaceType, depth: int, curves: Iterable[Curve]):
        self.surface = surface
        self.depth = depth
        self.curves: tuple[Curve, ...] = tuple(sorted(set(curves), key=_sort_key))
        self._index = {c: i for i, c in enumerate(self.curves)}
        self._table: WordTable | None = None
        self._disjoint: list[np.ndarray] | None = None

    @property
    def model(self) -> SpineModel:
        return spine_model(self.surface)

    def __len__(self):
        return len(self.curves)

    def __iter__(self) -> Iterator[Curve]:
        return iter(self.curves)

    def __contains__(self, c) -> bool:
        return c in self._index

    def index(self, c: Curve) -> int:
        return self._index[c]

    @property
    def table(self) -> WordTable:
        if self._table is None:
            self._table = WordTable(self.model, [c.word for c in self.curves])
        return self._table

    def disjointness(self, jobs: int = 1) -> list[np.ndarray]:
        """For each curve, the sorted indices of the window curves disjoint from it."""
        if self._disjoint is None:
            n = len(self.curves)
            all_js = np.arange(n, dtype=np.int64)

            def row(i):
                js = all_js[i + 1:]
                return js[self.table.disjoint_from(i, js)]

            if jobs > 1:
                with ThreadPoolExecutor(max_workers=jobs) as ex:
                    upper = list(ex.map(row, range(n)))
            else:
                upper = [row(i) for i in range(n)]
            lists: list[list[int]] = [[] for _ in range(n)]
            for i, js in enumerate(upper):
                for j in js:
                    lists[i].append(int(j))
                    lists[int(j)].append(i)
            self._disjoint = [np.array(sorted(x), dtype=np.int64) for x in lists]
        return self._disjoint

    def lines(self) -> list[str]:
        m = self.model
        return [f"{self.surface} depth={self.depth}"] + [m.format(c.word) for c in self.curves]


def enumerate_curves(model: SpineModel, depth: int, jobs: int = 1,
                     stats: EnumerationStats | None = None) -> CurveSet:
    """All images of the base curves under generator words of length at most ``depth``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    gs = generator_set(model)
    s = gs.model.surface
    seen = {c.word for c in gs.base_curves}
    frontier = sorted(seen)
    for _ in range(depth):
        if jobs > 1 and len(frontier) > 256:
            chunks = [frontier[k::jobs] for k in range(jobs)]
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                parts = list(ex.map(lambda ch: [apply_symbol(s, x, w) for w in ch for x in gs.symbols], chunks))
            images = [v for part in parts for v in part]
        else:
            images = [apply_symbol(s, x, w) for w in frontier for x in gs.symbols]
        if stats is not None:
            stats.generator_applications += len(images)
        new = {v for v in images if v not in seen}
        seen |= new
        frontier = sorted(new)
    return CurveSet(s, depth, (Curve(s, w) for w in seen))


def _cache_path(cache_dir: str | os.PathLike, surface: SurfaceType, depth: int) -> Path:
    return Path(cache_dir) / f"S{surface.genus}_{surface.boundary}_depth{depth}.curves"


def save_curve_set(cs: CurveSet, path: str | os.PathLike) -> None:
    Path(path).write_text("\n".join(cs.lines()) + "\n")


def load_curve_set(path: str | os.PathLike) -> CurveSet:
    text = Path(path).read_text().splitlines()
    if not text:
        raise ValueError(f"{path}: empty curve-set file")
    head = text[0].split()
    if len(head) != 2 or not head[1].startswith("depth="):
        raise ValueError(f"{path}: malformed header {text[0]!r}")
    surface = SurfaceType.parse(head[0])
    depth = int(head[1][len("depth="):])
    m = spine_model(surface)
    curves = [Curve(surface, m.parse(line)) for line in text[1:] if line.strip()]
    return CurveSet(surface, depth, curves)


def curve_set(model: SpineModel | SurfaceType | str, depth: int, cache_dir: str | os.PathLike | None = None,
              jobs: int = 1, stats: EnumerationStats | None = None) -> CurveSet:
    """Enumerated window, read from or written to ``cache_dir`` when given."""
    m = model if isinstance(model, SpineModel) else spine_model(model)
    if cache_dir is not None:
        path = _cache_path(cache_dir, m.surface, depth)
        if path.exists():
            if stats is not None:
                stats.cache_hits += 1
            return load_curve_set(path)
    cs = enumerate_curves(m, depth, jobs=jobs, stats=stats)
    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        save_curve_set(cs, path)
        if stats is not None:
            stats.cache_writes += 1
    return cs


# -- pairwise predicates -----------------------------------------------------------------


def minimal_intersection_type(c1: Curve, c2: Curve) -> MinimalIntersection:
    i = geometric_intersection(c1, c2)
    if i == 1:
        return MinimalIntersection.ONCE
    if i == 2 and algebraic_intersection(c1, c2) == 0:
        return MinimalIntersection.TWICE_ZERO_ALGEBRAIC
    return MinimalIntersection.NONE


def complex_adjacent(c1: Curve, c2: Curve) -> bool:
    """Edge relation of the curve graph: disjoint, or for complexity one minimal intersection."""
    if c1 == c2:
        raise ValueError("adjacency is defined for distinct curves")
    if complexity(c1.surface) == 1:
        return minimal_intersection_type(c1, c2) is not MinimalIntersection.NONE
    return geometric_intersection(c1, c2) == 0


def small_intersection_type(c1: Curve, c2: Curve) -> SmallIntersection:
    if c1 == c2:
        return SmallIntersection.NONE
    f = filled_subsurface([c1, c2])
    if f == SurfaceType(0, 4):
        return SmallIntersection.FOUR_HOLED_SPHERE
    if f == SurfaceType(1, 1):
        return SmallIntersection.ONE_HOLED_TORUS
    return SmallIntersection.NONE


# -- multicurves -----------------------------------------------------------------------------


def is_pants_decomposition(q: Iterable[Curve]) -> bool:
    cs = check_multicurve(q)
    return bool(cs) and len(cs) == complexity(cs[0].surface)


def pants_certificate(q: Iterable[Curve]) -> bool:
    """Cutting along ``q`` leaves only pairs of pants."""
    cs = check_multicurve(q)
    if not cs:
        return False
    comps = cut_components(cs[0].model, cs)
    return all(component_type(k) == SurfaceType(0, 3) for k in comps)


def adjacency_graph(q: Iterable[Curve]) -> nx.Graph:
    """Curves of ``q``, joined when they border a common complementary pair of pants."""
    cs = check_multicurve(q)
    g = nx.Graph()
    g.add_nodes_from(cs)
    if not cs:
        return g
    for comp in cut_components(cs[0].model, cs):
        if component_type(comp) != SurfaceType(0, 3):
            continue
        around = sorted({i for b in comp.boundaries for i in b.curves})
        for x in range(len(around)):
            for y in range(x + 1, len(around)):
                g.add_edge(cs[around[x]], cs[around[y]])
    return g


def link(c: Curve, s: CurveSet) -> set[Curve]:
    """Window curves distinct from and disjoint from ``c``."""
    if c not in s:
        raise KeyError(f"{c} is not in the curve set")
    i = s.index(c)
    if s._disjoint is not None:
        return {s.curves[j] for j in s._disjoint[i]}
    mask = s.table.disjoint_from(i)
    return {s.curves[j] for j in np.nonzero(mask)[0]}


def chain_neighbors(c: Curve, s: CurveSet) -> set[Curve]:
    """Window curves meeting ``c`` minimally (the edge relation at complexity one)."""
    if c not in s:
        raise KeyError(f"{c} is not in the curve set")
    i = s.index(c)
    row = s.table.row(i, cap=2)
    out = set()
    for j in np.nonzero((row == 1) | (row == 2))[0]:
        d = s.curves[j]
        if minimal_intersection_type(c, d) is not MinimalIntersection.NONE:
            out.add(d)
    return out


def _cliques(adj: dict[int, set[int]], nodes: list[int], size: int,
             among: set[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Cliques of exactly ``size`` vertices (inside ``among`` if given), each once, increasing."""
    def grow(clique, cand):
        if len(clique) == size:
            yield tuple(clique)
            return
        for v in sorted(cand):
            if v > clique[-1]:
                yield from grow(clique + [v], cand & adj[v])

    for v in nodes:
        cand = {u for u in adj[v] if u > v}
        if among is not None:
            cand &= among
        yield from grow([v], cand)


def max_disjoint_separating(s: CurveSet) -> tuple[int, tuple[Curve, ...]]:
    """Size of the largest multicurve of separating window curves, with a witness.

    Curves are scanned in window order; each new curve is tested only
    against earlier separating curves, and the scan stops as soon as a
    multicurve of the largest conceivable size (the complexity) appears.
    """
    sep = [i for i, c in enumerate(s.curves) if curve_type(c) is not CurveType.NON_SEPARATING]
    if not sep:
        return 0, ()
    kappa = complexity(s.surface)
    adj: dict[int, set[int]] = {}
    best: tuple[int, ...] = (sep[0],)
    for n, i in enumerate(sep):
        earlier = np.array(sep[:n], dtype=np.int64)
        back = {int(j) for j in earlier[s.table.disjoint_from(i, earlier)]} if n else set()
        adj[i] = back
        for j in back:
            adj[j].add(i)
        if len(best) >= kappa or len(back) < len(best):
            continue
        found = next(_cliques(adj, sorted(back), len(best), among=back), None)
        while found is not None:
            best = found + (i,)
            if len(best) >= kappa:
                break
            found = next(_cliques(adj, sorted(back), len(best), among=back), None)
        if len(best) >= kappa:
            break
    return len(best), tuple(s.curves[i] for i in best)


def pants_decompositions(s: CurveSet, jobs: int = 1) -> Iterator[tuple[Curve, ...]]:
    """Every pants decomposition made of window curves."""
    k = complexity(s.surface)
    dis = s.disjointness(jobs)
    adj = {i: set(int(j) for j in dis[i]) for i in range(len(s))}
    for clique in _cliques(adj, list(range(len(s))), k):
        yield tuple(s.curves[i] for i in clique)


@dataclass
class PantsCensus:
    decompositions: int = 0
    type_classes: dict = field(default_factory=dict)  # sorted curve-type tuple -> example
    graph_classes: list = field(default_factory=list)  # (graph, example) per isomorphism class

    @property
    def n_graph_types(self) -> int:
        return len(self.graph_classes)


def _type_key(p: tuple[Curve, ...]) -> tuple[str, ...]:
    return tuple(sorted(str(curve_type(c)) for c in p))


def pants_census(s: CurveSet, jobs: int = 1) -> PantsCensus:
    """Curve-type and adjacency-graph classes of the pants decompositions in a window.

    Adjacency graphs are computed once per class of (curve types, graph of
    the decomposition's own adjacency) and compared up to isomorphism.
    """
    census = PantsCensus()
    for p in pants_decompositions(s, jobs):
        census.decompositions += 1
        census.type_classes.setdefault(_type_key(p), p)
        g = adjacency_graph(p)
        if not any(nx.is_isomorphic(g, h) for h, _ in census.graph_classes):
            census.graph_classes.append((g, p))
    return census
