"""One-vertex ribbon-graph spines of surfaces with boundary.

A surface ``S{g},{b}`` with ``b >= 1`` deformation retracts onto a graph with
one vertex and ``2g + b - 1`` loops.  The cyclic order of half-edges at the
vertex (the ribbon structure) determines the surface; its faces are the
boundary components.

Generator ``k`` (1-based) is an edge leaving the vertex through half-edge
``2(k-1)`` and returning through ``2(k-1) + 1``.  Generators are named
``a1, b1, ..., ag, bg`` for the handles and ``z1, ..., z{b-1}`` for loops
around all but the last boundary component.  Literal words are written with
whitespace separated generator names and a ``'`` suffix for inverses, e.g.
``"a1 b1 a1'"``.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

from . import words
from .surface import SurfaceType, complexity
from .words import Word

_TOKEN_RE = re.compile(r"([a-z]\d+)('*)")


class UnsupportedSurface(ValueError):
    """The surface cannot be modelled by a free-group spine."""


class WordSyntaxError(ValueError):
    """A curve or mapping-class literal could not be parsed."""


def start_half_edge(x: int) -> int:
    """Half-edge through which the path of letter ``x`` leaves the vertex."""
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


def end_half_edge(x: int) -> int:
    """Half-edge through which the path of letter ``x`` returns to the vertex."""
    return start_half_edge(-x)


class SpineModel:
    """Concrete ribbon-graph model of a surface with boundary.

    Use :func:`spine_model` to obtain the shared instance for a surface type.
    """

    def __init__(self, surface: SurfaceType):
        if surface.boundary < 1:
            raise UnsupportedSurface(f"{surface} is closed; the spine model needs a free fundamental group")
        if surface.euler_characteristic >= 0:
            raise UnsupportedSurface(f"{surface} is a disc or an annulus; it carries no curves")
        self.surface = surface
        g, b = surface.genus, surface.boundary
        names = []
        for i in range(1, g + 1):
            names += [f"a{i}", f"b{i}"]
        names += [f"z{j}" for j in range(1, b)]
        self.names: tuple[str, ...] = tuple(names)
        self.rank = len(names)
        self._index = {name: k + 1 for k, name in enumerate(names)}

        # handle i contributes a+ b+ a- b-, each z contributes z+ z-
        rot = []
        for i in range(g):
            a, bb = 2 * i, 2 * i + 1
            rot += [2 * a, 2 * bb, 2 * a + 1, 2 * bb + 1]
        for j in range(b - 1):
            k = 2 * g + j
            rot += [2 * k, 2 * k + 1]
        self.rotation: tuple[int, ...] = tuple(rot)
        self.n_half_edges = len(rot)
        self.position = {h: i for i, h in enumerate(rot)}

        self._trace_faces()
        if len(self.boundary_words) != b:
            raise AssertionError(f"spine of {surface} has {len(self.boundary_words)} faces, expected {b}")
        if 1 - self.rank != surface.euler_characteristic:
            raise AssertionError("Euler characteristic mismatch")
        self._boundary_canonical = {words.canonical(w): i for i, w in enumerate(self.boundary_words)}

    # -- ribbon structure -------------------------------------------------

    def next_ccw(self, h: int) -> int:
        return self.rotation[(self.position[h] + 1) % self.n_half_edges]

    def ccw_offset(self, origin: int, h: int) -> int:
        """Number of counterclockwise steps from half-edge ``origin`` to ``h``."""
        return (self.position[h] - self.position[origin]) % self.n_half_edges

    def _trace_faces(self):
        # corner c_h lies between half-edge h and the next one counterclockwise;
        # walking the boundary from c_h runs along the band of next_ccw(h)
        corner_face = {}
        faces: list[Word] = []
        face_corners: list[tuple[int, ...]] = []
        for h0 in self.rotation:
            if h0 in corner_face:
                continue
            idx = len(faces)
            letters, corners = [], []
            h = h0
            while h not in corner_face:
                corner_face[h] = idx
                corners.append(h)
                nxt = self.next_ccw(h)
                k = nxt // 2 + 1
                letters.append(k if nxt % 2 == 0 else -k)
                h = nxt ^ 1
            faces.append(tuple(letters))
            face_corners.append(tuple(corners))
        # number boundary components so that z_j goes round component j - 1
        # and the remaining face (the outer boundary) comes last
        g = self.surface.genus

        def label(f):
            w = faces[f]
            if len(w) == 1 and abs(w[0]) > 2 * g:
                return abs(w[0]) - 2 * g - 1
            return self.surface.boundary - 1

        relabel = {f: label(f) for f in range(len(faces))}
        if sorted(relabel.values()) != list(range(len(faces))):
            raise AssertionError("unexpected face structure")
        self.corner_face: dict[int, int] = {h: relabel[f] for h, f in corner_face.items()}
        ordered = sorted(range(len(faces)), key=relabel.__getitem__)
        self.boundary_words: tuple[Word, ...] = tuple(faces[f] for f in ordered)
        self.face_corners = tuple(face_corners[f] for f in ordered)

    # -- literals ----------------------------------------------------------

    def parse(self, text: str) -> Word:
        """Parse a literal such as ``"a1 b1 a1'"`` into a tuple of letters."""
        out = []
        for tok in text.replace(",", " ").split():
            m = _TOKEN_RE.fullmatch(tok)
            if m is None or m.group(1) not in self._index:
                raise WordSyntaxError(f"unknown letter {tok!r} for {self.surface} (generators: {' '.join(self.names)})")
            k = self._index[m.group(1)]
            out.append(k if len(m.group(2)) % 2 == 0 else -k)
        return tuple(out)

    def format(self, w: Word) -> str:
        return " ".join(self.names[abs(x) - 1] + ("'" if x < 0 else "") for x in w)

    def check_word(self, w: Word) -> None:
        for x in w:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise WordSyntaxError(f"letter {x!r} is outside the alphabet of {self.surface}")

    # -- peripheral structure ---------------------------------------------

    def peripheral_index(self, w: Word) -> int | None:
        """Index of the boundary component ``w`` is freely homotopic to, if any."""
        return self._boundary_canonical.get(words.canonical(w))

    def is_peripheral(self, w: Word) -> bool:
        return self.peripheral_index(w) is not None

    @property
    def complexity(self) -> int:
        return complexity(self.surface)

    # -- homology ------------------------------------------------------------

    @property
    def intersection_form(self) -> tuple[tuple[int, ...], ...]:
        return _intersection_form(self.surface)

    def __repr__(self):
        return f"SpineModel({self.surface})"

    def __reduce__(self):
        return (spine_model, (self.surface,))


@lru_cache(maxsize=None)
def _intersection_form(surface: SurfaceType) -> tuple[tuple[int, ...], ...]:
    m = spine_model(surface)
    n = m.rank
    # generator k is a chord from its incoming to its outgoing half-edge
    ang = {h: 2 * math.pi * m.position[h] / m.n_half_edges for h in m.rotation}
    form = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            p, q = ang[2 * i + 1], ang[2 * i]
            r, s = ang[2 * j + 1], ang[2 * j]
            form[i][j] = _chord_crossing_sign(p, q, r, s)
    return tuple(tuple(row) for row in form)


def _chord_crossing_sign(p: float, q: float, r: float, s: float) -> int:
    """Sign of the crossing of straight chords p->q and r->s on the unit circle."""
    def inside(x, lo, hi):
        return 0 < (x - lo) % (2 * math.pi) < (hi - lo) % (2 * math.pi)
    if inside(r, p, q) == inside(s, p, q):
        return 0
    u = (math.cos(q) - math.cos(p), math.sin(q) - math.sin(p))
    v = (math.cos(s) - math.cos(r), math.sin(s) - math.sin(r))
    return 1 if u[0] * v[1] - u[1] * v[0] > 0 else -1


def spine_model(surface: SurfaceType | str) -> SpineModel:
    """The shared :class:`SpineModel` for a surface type or its ``S{g},{b}`` string."""
    if isinstance(surface, str):
        surface = SurfaceType.parse(surface)
    return _spine_model(surface)


@lru_cache(maxsize=None)
def _spine_model(surface: SurfaceType) -> SpineModel:
    return SpineModel(surface)
