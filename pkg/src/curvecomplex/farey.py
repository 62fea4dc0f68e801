"""Slopes, finite windows of the Farey graph, and the bridge from complexity-one curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import networkx as nx
import numpy as np

from .curves import Curve, InvalidCurve, make_curve
from .spine import spine_model
from .surface import SurfaceType
from .words import abelianization


@dataclass(frozen=True, order=True)
class Slope:
    """Primitive slope p/q, normalised so that q > 0, or (p, q) = (1, 0)."""

    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not a primitive slope")
        if not (self.q > 0 or (self.q == 0 and self.p == 1)):
            raise ValueError(f"{self.p}/{self.q} is not normalised")

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        """Normalised slope of the non-zero vector (p, q), reducing by the gcd."""
        g = gcd(p, q)
        if g == 0:
            raise ValueError("the zero vector has no slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        try:
            p, q = text.strip().split("/")
            return cls.of(int(p), int(q))
        except ValueError as e:
            raise ValueError(f"bad slope literal {text!r}: expected p/q") from e

    def __str__(self):
        return f"{self.p}/{self.q}"


def slope_det(s1: Slope, s2: Slope) -> int:
    return abs(s1.p * s2.q - s2.p * s1.q)


def _partner(c: Slope) -> Slope:
    """A slope at determinant one from ``c`` (from the extended Euclidean algorithm)."""
    def egcd(a, b):
        if b == 0:
            return a, 1, 0
        g, x, y = egcd(b, a % b)
        return g, y, x - (a // b) * y

    g, x, y = egcd(c.p, c.q)
    # c.p * x + c.q * y = g = +-1, so (-y, x) has determinant +-1 with c
    return Slope.of(-y, x)


@dataclass
class FareyBall:
    """Slopes generated from ``center`` in ``radius`` rounds, with induced edges and triangles.

    Round one adds a neighbour ``n`` of the centre together with ``n + c`` and
    ``n - c``; every later round adds ``u + v`` and ``u - v`` for each edge
    ``(u, v)`` already present.  ``level`` records the round in which a slope
    first appears, which bounds its graph distance from the centre.
    """

    center: Slope
    radius: int
    level: dict = field(default_factory=dict)
    edges: list = field(default_factory=list)
    triangles: list = field(default_factory=list)

    @property
    def vertices(self) -> list[Slope]:
        return sorted(self.level)

    def interior_edges(self) -> list[tuple[Slope, Slope]]:
        return [(u, v) for u, v in self.edges if max(self.level[u], self.level[v]) <= self.radius - 1]

    def interior_triangles(self) -> list[tuple[Slope, Slope, Slope]]:
        return [t for t in self.triangles if max(self.level[x] for x in t) <= self.radius - 1]

    def edge_list(self) -> list[str]:
        return [f"{u} {v}" for u, v in self.edges]


def _sum(u: Slope, v: Slope, sign: int) -> Slope:
    return Slope.of(u.p + sign * v.p, u.q + sign * v.q)


def ball(c: Slope, r: int) -> FareyBall:
    if r < 0:
        raise ValueError("radius must be non-negative")
    level = {c: 0}
    if r >= 1:
        n = _partner(c)
        for s in (n, _sum(n, c, 1), _sum(n, c, -1)):
            level.setdefault(s, 1)
        for rnd in range(2, r + 1):
            current = sorted(level)
            for u, v in _unit_pairs(current):
                for sign in (1, -1):
                    level.setdefault(_sum(u, v, sign), rnd)
    b = FareyBall(c, r, level)
    verts = b.vertices
    b.edges = _unit_pairs(verts)
    adj = {v: set() for v in verts}
    for u, v in b.edges:
        adj[u].add(v)
        adj[v].add(u)
    b.triangles = sorted((u, v, w) for u, v in b.edges for w in adj[u] & adj[v] if w > v)
    return b


def _unit_pairs(verts: list[Slope]) -> list[tuple[Slope, Slope]]:
    """Pairs (u, v), u < v in slope order, at determinant one."""
    if len(verts) < 2:
        return []
    p = np.array([s.p for s in verts], dtype=np.int64)
    q = np.array([s.q for s in verts], dtype=np.int64)
    det = np.abs(np.outer(p, q) - np.outer(q, p))
    iu, ju = np.nonzero(np.triu(det == 1, k=1))
    return sorted((verts[i], verts[j]) for i, j in zip(iu, ju))


def triangles_on_edge(b: FareyBall) -> dict[tuple[Slope, Slope], int]:
    count = {e: 0 for e in b.edges}
    for u, v, w in b.triangles:
        for e in ((u, v), (u, w), (v, w)):
            count[e] += 1
    return count


def dual_graph(b: FareyBall) -> nx.Graph:
    """Triangles of the ball, joined when they share an edge."""
    g = nx.Graph()
    g.add_nodes_from(b.triangles)
    by_edge: dict = {}
    for t in b.triangles:
        u, v, w = t
        for e in ((u, v), (u, w), (v, w)):
            by_edge.setdefault(e, []).append(t)
    for ts in by_edge.values():
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                g.add_edge(ts[i], ts[j])
    return g


@dataclass
class LocalCertificate:
    radius: int
    interior_edges: int
    bad_edges: list
    dual_acyclic: bool
    interior_triangles: int
    bad_triangles: list

    @property
    def ok(self) -> bool:
        return self.dual_acyclic and not self.bad_edges and not self.bad_triangles


def local_certificate(b: FareyBall) -> LocalCertificate:
    """Interior edges lie in two triangles; the dual graph is a forest, trivalent inside."""
    on_edge = triangles_on_edge(b)
    inner = b.interior_edges()
    bad = [e for e in inner if on_edge[e] != 2]
    d = dual_graph(b)
    inner_t = b.interior_triangles()
    bad_t = [t for t in inner_t if d.degree(t) != 3]
    return LocalCertificate(b.radius, len(inner), bad, d.number_of_nodes() == 0 or nx.is_forest(d), len(inner_t), bad_t)


# -- integer Moebius maps --------------------------------------------------------------


def mobius(m: tuple[int, int, int, int], s: Slope) -> Slope:
    """Image of ``s`` under the integer matrix ((a, b), (c, d)) acting on column vectors."""
    a, b, c, d = m
    if abs(a * d - b * c) != 1:
        raise ValueError("matrix is not invertible over the integers")
    return Slope.of(a * s.p + b * s.q, c * s.p + d * s.q)


def mobius_preserves_triangles(b: FareyBall, m: tuple[int, int, int, int]) -> bool:
    """The map is injective on the ball, sends edges to edges and triangles to 3-cycles."""
    image = {v: mobius(m, v) for v in b.vertices}
    if len(set(image.values())) != len(image):
        return False
    if any(slope_det(image[u], image[v]) != 1 for u, v in b.edges):
        return False
    for u, v, w in b.triangles:
        x, y, z = image[u], image[v], image[w]
        if slope_det(x, y) != 1 or slope_det(x, z) != 1 or slope_det(y, z) != 1:
            return False
    return True


# -- curves on complexity-one models ---------------------------------------------------

_TORUS = SurfaceType(1, 1)
_SPHERE4 = SurfaceType(0, 4)

# Each boundary loop of the four-holed sphere acts on the plane as a point
# reflection v -> -v + t; a curve (an even product) acts as a translation,
# whose direction is its slope.
_REFLECTION_CENTRES = {1: (0, 0), 2: (1, 0), 3: (1, 1)}


def slope_of_curve(c: Curve) -> Slope:
    if c.surface == _TORUS:
        v = abelianization(c.word, 2)
        return Slope.of(v[0], v[1])
    if c.surface == _SPHERE4:
        sign, tx, ty = 1, 0, 0
        for x in c.word:
            cx, cy = _REFLECTION_CENTRES[abs(x)]
            # compose on the right: v -> s*(-v + t_x) + (tx, ty)
            tx, ty = tx + sign * cx, ty + sign * cy
            sign = -sign
        if sign != 1:
            raise InvalidCurve(f"{c} has odd length; not a curve on {c.surface}")
        return Slope.of(tx, ty)
    raise ValueError(f"slopes are defined on S1,1 and S0,4, not {c.surface}")


def christoffel_word(s: Slope) -> tuple[int, ...]:
    """Cutting sequence of the line of slope ``s`` on the square torus, in letters 1 (a1) and 2 (b1)."""
    p, q = abs(s.p), abs(s.q)
    n = p + q
    word = []
    for i in range(1, n + 1):
        word.append(2 if (i * q) // n != ((i - 1) * q) // n else 1)
    sb = -1 if s.p * s.q < 0 else 1
    return tuple(x if x == 1 else sb * x for x in word)


def curve_of_slope(s: Slope) -> Curve:
    """The curve of slope ``s`` on the one-holed torus."""
    return make_curve(spine_model(_TORUS), christoffel_word(s))
