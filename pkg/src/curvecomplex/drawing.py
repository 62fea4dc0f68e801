"""Explicit drawings of closed geodesic paths on a ribbon-graph spine.

The surface is a thickened spine: a vertex disc plus one band per edge.  A
cyclically reduced word becomes a family of parallel strands running along
the bands, joined by straight chords inside the vertex disc.  Strands sharing
a band are ordered by comparing their forward rays lexicographically, turning
left or right at the point where they separate.  With this ordering two
strands cross only where their paths are linked, so the drawing realises the
minimal number of intersections and self-intersections for primitive words.

Cutting the surface along the drawn curves yields a complex of discs (the
faces of the chord arrangement and the strips of the bands) from which the
complementary components, their Euler characteristics and boundary circles
are read off.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cmp_to_key

import numpy as np

from .spine import SpineModel, end_half_edge, start_half_edge
from .words import Word, inverse, letter_rank

TAU = 2 * math.pi


class DegenerateDrawing(ValueError):
    """Two strands could not be separated (repeated or non-primitive words)."""


@dataclass
class Chord:
    curve: int
    visit: int  # vertex visit between letters visit and visit + 1
    start: tuple[int, int]  # slot (half-edge, ccw index) where the strand arrives
    end: tuple[int, int]  # slot where it leaves
    p: tuple[float, float] = (0.0, 0.0)
    q: tuple[float, float] = (0.0, 0.0)
    crossings: list = field(default_factory=list)  # (t, other chord index, sign)


class Drawing:
    """Simultaneous minimal-position drawing of a list of words."""

    def __init__(self, model: SpineModel, curves: list[Word], seed: int = 0, disjoint: bool = False):
        """``disjoint=True`` promises pairwise disjoint simple curves and skips crossing detection."""
        self.model = model
        self.curves = [tuple(w) for w in curves]
        self._inverses = [inverse(w) for w in self.curves]
        self._turn = _turn_table(model)
        self._order_bands()
        self._layout(seed)
        self._build_chords()
        if not disjoint:
            self._find_crossings()

    # -- strand order in each band ----------------------------------------------

    def _ray(self, ci: int, i: int, backward: bool = False):
        """Ray from letter ``i`` along (or, if ``backward``, against) its band's edge direction."""
        w = self.curves[ci]
        if (w[i] > 0) != backward:
            return w, i
        return self._inverses[ci], len(w) - 1 - i

    def _diverge(self, ra, rb) -> tuple[int, int]:
        """Side (-1: ``ra`` on the left) and offset at which two rays separate."""
        u, i = ra
        v, j = rb
        nu, nv = len(u), len(v)
        prev = u[i]
        turn = self._turn
        for t in range(1, nu + nv + 1):
            la, lb = u[(i + t) % nu], v[(j + t) % nv]
            if la != lb:
                # the strand turning further counterclockwise runs on the left
                return (-1 if turn[prev, la] > turn[prev, lb] else 1), t
            prev = la
        raise DegenerateDrawing("strands never separate; words must be primitive and pairwise distinct")

    def _compare(self, a, b) -> int:
        fwd, f = self._diverge(self._ray(*a), self._ray(*b))
        bwd, t = self._diverge(self._ray(*a, backward=True), self._ray(*b, backward=True))
        bwd = -bwd  # left of the reversed direction is right of the edge direction
        if fwd == bwd:
            return fwd
        # Linked: the strands cross once along their common segment, which runs
        # from vertex -back to vertex f (the band sits between vertices 0 and 1).
        # The crossing goes at the segment's midpoint, rounded towards the start
        # of its canonical orientation so that every band of the segment agrees.
        back = t - 1
        twice_mid = f - back
        if twice_mid % 2 == 0:
            c = twice_mid // 2
        else:
            c = (twice_mid - 1) // 2 if self._segment_is_canonical(a, back, f) else (twice_mid + 1) // 2
        return bwd if c >= 1 else fwd

    def _segment_is_canonical(self, a, back: int, f: int) -> bool:
        u, i = self._ray(*a)
        nu = len(u)
        seg = [u[(i + s) % nu] for s in range(-back, f)]
        m = len(seg)
        for k in range(m):
            x, y = letter_rank(seg[k]), letter_rank(-seg[m - 1 - k])
            if x != y:
                return x < y
        return True

    def _order_bands(self):
        per_edge: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for ci, w in enumerate(self.curves):
            for i, x in enumerate(w):
                per_edge[abs(x) - 1].append((ci, i))
        self.band: dict[int, list[tuple[int, int]]] = {}
        self.rank: dict[tuple[int, int], int] = {}
        for e in range(self.model.rank):
            trav = per_edge.get(e, [])
            trav.sort(key=cmp_to_key(self._compare))
            self.band[e] = trav
            for r, key in enumerate(trav):
                self.rank[key] = r

    def slot_index(self, h: int, r: int) -> int:
        """Counterclockwise index at mouth ``h`` of the strand of band rank ``r``."""
        k = len(self.band[h // 2])
        return k - 1 - r if h % 2 == 0 else r

    def strip_at(self, h: int, idx: int) -> int:
        """Strip (0 = leftmost) whose end is the ``idx``-th gap counterclockwise at mouth ``h``."""
        k = len(self.band[h // 2])
        return k - idx if h % 2 == 0 else idx

    # -- circle layout ---------------------------------------------------------

    def _layout(self, seed: int):
        rng = random.Random(seed)
        items = []  # (kind, data) in counterclockwise order
        for h in self.model.rotation:
            k = len(self.band[h // 2])
            for idx in range(k):
                items.append(("gap", (h, idx)))
                items.append(("slot", (h, idx)))
            items.append(("gap", (h, k)))
            items.append(("corner", h))
        n = len(items)
        self.circle_items = items
        self.angle: dict[tuple, float] = {}
        for pos, (kind, data) in enumerate(items):
            jitter = rng.uniform(-0.25, 0.25) if kind == "slot" else 0.0
            self.angle[(kind, data)] = TAU * (pos + jitter) / n

    def point(self, kind: str, data) -> tuple[float, float]:
        a = self.angle[(kind, data)]
        return (math.cos(a), math.sin(a))

    # -- chords ---------------------------------------------------------------------

    def _build_chords(self):
        self.chords: list[Chord] = []
        self.chord_of: dict[tuple[int, int], int] = {}
        for ci, w in enumerate(self.curves):
            m = len(w)
            for i in range(m):
                j = (i + 1) % m
                h_in = end_half_edge(w[i])
                h_out = start_half_edge(w[j])
                s = (h_in, self.slot_index(h_in, self.rank[(ci, i)]))
                t = (h_out, self.slot_index(h_out, self.rank[(ci, j)]))
                c = Chord(ci, i, s, t, self.point("slot", s), self.point("slot", t))
                self.chord_of[(ci, i)] = len(self.chords)
                self.chords.append(c)

    def _find_crossings(self):
        chords = self.chords
        n = len(chords)
        if n < 2:
            return
        ang = np.array([(self.angle[("slot", c.start)], self.angle[("slot", c.end)]) for c in chords])
        p, q = ang[:, 0], ang[:, 1]
        span = (q - p) % TAU
        rel_p = (p[None, :] - p[:, None]) % TAU  # rel[a, b]: angle of b's ends seen from a's start
        rel_q = (q[None, :] - p[:, None]) % TAU
        inside_p = (rel_p > 0) & (rel_p < span[:, None])
        inside_q = (rel_q > 0) & (rel_q < span[:, None])
        ia, ib = np.nonzero(np.triu(inside_p != inside_q, k=1))
        if len(ia) == 0:
            return
        xy = np.array([c.p + c.q for c in chords])
        ux, uy = xy[ia, 2] - xy[ia, 0], xy[ia, 3] - xy[ia, 1]
        vx, vy = xy[ib, 2] - xy[ib, 0], xy[ib, 3] - xy[ib, 1]
        den = ux * vy - uy * vx
        wx, wy = xy[ib, 0] - xy[ia, 0], xy[ib, 1] - xy[ia, 1]
        ta = (wx * vy - wy * vx) / den
        tb = (wx * uy - wy * ux) / den
        for a, b, s, t, d in zip(ia.tolist(), ib.tolist(), ta.tolist(), tb.tolist(), den.tolist()):
            sign = 1 if d > 0 else -1
            chords[a].crossings.append((s, b, sign))
            chords[b].crossings.append((t, a, -sign))
        for c in chords:
            c.crossings.sort()

    def crossing_count(self, i: int, j: int) -> int:
        """Crossings between curves ``i`` and ``j`` (self-crossings when equal)."""
        n = sum(1 for c in self.chords if c.curve == i for _, o, _ in c.crossings if self.chords[o].curve == j)
        return n // 2 if i == j else n

    def signed_crossings(self, i: int, j: int) -> int:
        return sum(s for c in self.chords if c.curve == i for _, o, s in c.crossings if self.chords[o].curve == j)

    # -- splicing -------------------------------------------------------------------

    def loop_from(self, ci: int, visit: int, forward: bool) -> Word:
        """Letters of curve ``ci`` read once around from vertex visit ``visit``."""
        w = self.curves[ci]
        m = len(w)
        if forward:
            return tuple(w[(visit + 1 + t) % m] for t in range(m))
        return tuple(-w[(visit - t) % m] for t in range(m))

    def splices_along(self, p, q, curve: int, left: bool = True) -> list[Word]:
        """Loops inserted by a twist about ``curve`` along the segment ``p -> q``.

        ``p`` and ``q`` are points on the boundary circle of the vertex disc;
        the segment must avoid chord endpoints.
        """
        hits = []
        pa, qa = _angle_of(p), _angle_of(q)
        for c in self.chords:
            if c.curve != curve:
                continue
            if not _interleaved(pa, qa, self.angle[("slot", c.start)], self.angle[("slot", c.end)]):
                continue
            t, _, sign = _segment_intersection(p, q, c.p, c.q)
            hits.append((t, c, sign))
        hits.sort(key=lambda x: x[0])
        return [self.loop_from(c.curve, c.visit, (sign > 0) == left) for _, c, sign in hits]

    def surgered(self, ci: int, curve: int, left: bool = True) -> Word:
        """Word of curve ``ci`` after inserting ``curve`` at every crossing with it."""
        w = self.curves[ci]
        out: list[int] = []
        for i, x in enumerate(w):
            out.append(x)
            for _, o, sign in self.chords[self.chord_of[(ci, i)]].crossings:
                oc = self.chords[o]
                if oc.curve == curve:
                    out.extend(self.loop_from(curve, oc.visit, (sign > 0) == left))
        return tuple(out)

    # -- cut surface ----------------------------------------------------------------

    def cut_complex(self) -> "PolygonComplex":
        """The surface cut open along every drawn curve, as a complex of discs."""
        cx = PolygonComplex()
        self._disc_faces(cx)
        for e in range(self.model.rank):
            k = len(self.band[e])
            for t in range(k + 1):
                south = ("curve", self.band[e][t][0]) if t < k else ("bside", e)
                north = ("curve", self.band[e][t - 1][0]) if t > 0 else ("bside", e)
                cx.add([
                    (None, ("end", 2 * e, t)),
                    (south, None),
                    (None, ("end", 2 * e + 1, t)),
                    (north, None),
                ])
        return cx

    def _circle_subedges(self, i0: int, i1: int) -> list:
        """Labelled pieces of the boundary circle from item ``i0`` to ``i1`` counterclockwise."""
        items = self.circle_items
        n = len(items)
        out = []
        if items[i0][0] == "corner":
            out.append((("bnd", self.model.corner_face[items[i0][1]]), None))
        i = i0
        while i != i1:
            i = (i + 1) % n
            kind, data = items[i]
            if kind == "gap":
                h, idx = data
                out.append((None, ("end", h, self.strip_at(h, idx))))
            elif kind == "corner":
                out.append((("bnd", self.model.corner_face[data]), None))
        return out

    def _disc_faces(self, cx: "PolygonComplex"):
        items = self.circle_items
        n = len(items)
        vertices: dict = {}  # key -> point
        adj: dict = defaultdict(dict)  # u -> {v: label list for u->v}

        circle_keys = [i for i, (kind, _) in enumerate(items) if kind in ("slot", "corner")]
        for i in circle_keys:
            vertices[("c", i)] = self.point(*items[i])
        for a, b in zip(circle_keys, circle_keys[1:] + circle_keys[:1]):
            u, v = ("c", a), ("c", b)
            adj[u][v] = self._circle_subedges(a, b)
            adj[v][u] = None  # traversed clockwise: only on the outer face

        item_index = {data: i for i, (kind, data) in enumerate(items) if kind == "slot"}
        for ci, c in enumerate(self.chords):
            pts = [("c", item_index[c.start])]
            for t, o, _ in c.crossings:
                key = ("x", min(ci, o), max(ci, o))
                if key not in vertices:
                    vertices[key] = (c.p[0] + t * (c.q[0] - c.p[0]), c.p[1] + t * (c.q[1] - c.p[1]))
                pts.append(key)
            pts.append(("c", item_index[c.end]))
            lab = [(("curve", c.curve), None)]
            for u, v in zip(pts, pts[1:]):
                adj[u][v] = lab
                adj[v][u] = lab

        order = {}
        for u, nbrs in adj.items():
            ux, uy = vertices[u]
            order[u] = sorted(nbrs, key=lambda v: math.atan2(vertices[v][1] - uy, vertices[v][0] - ux))
        pos_in = {u: {v: k for k, v in enumerate(vs)} for u, vs in order.items()}

        seen = set()
        for u in adj:
            for v in adj[u]:
                if (u, v) in seen:
                    continue
                face, area = [], 0.0
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    face.append((a, b))
                    ax, ay = vertices[a]
                    bx, by = vertices[b]
                    area += ax * by - ay * bx
                    nb = order[b]
                    c = nb[(pos_in[b][a] - 1) % len(nb)]
                    a, b = b, c
                if area <= 0:
                    continue  # outer face
                edges = []
                for a, b in face:
                    lab = adj[a][b]
                    if lab is None:
                        raise AssertionError("bounded face runs clockwise along the circle")
                    edges.extend(lab)
                cx.add(edges)


_TURNS: dict = {}


def _turn_table(model: SpineModel) -> dict[tuple[int, int], int]:
    """Counterclockwise offset from where letter ``x`` arrives to where letter ``y`` leaves."""
    t = _TURNS.get(model.surface)
    if t is None:
        letters = [k for e in range(1, model.rank + 1) for k in (e, -e)]
        t = _TURNS[model.surface] = {
            (x, y): model.ccw_offset(end_half_edge(x), start_half_edge(y)) for x in letters for y in letters}
    return t


def _angle_of(p) -> float:
    return math.atan2(p[1], p[0]) % TAU


def _interleaved(p: float, q: float, r: float, s: float) -> bool:
    lo, span = p, (q - p) % TAU

    def inside(x):
        return 0 < (x - lo) % TAU < span

    return inside(r) != inside(s)


def _segment_intersection(p, q, r, s):
    """Parameters along ``p->q`` and ``r->s`` of their crossing, and its sign."""
    ux, uy = q[0] - p[0], q[1] - p[1]
    vx, vy = s[0] - r[0], s[1] - r[1]
    den = ux * vy - uy * vx
    wx, wy = r[0] - p[0], r[1] - p[1]
    t = (wx * vy - wy * vx) / den
    u = (wx * uy - wy * ux) / den
    return t, u, (1 if den > 0 else -1)


# -- complexes of discs ---------------------------------------------------------------


@dataclass
class Boundary:
    """A boundary circle of a cut surface: labels of its free edges in order."""

    labels: list

    @property
    def original(self) -> int | None:
        """Index of the boundary component of the uncut surface, if this is one."""
        for lab in self.labels:
            if lab[0] == "bnd":
                return lab[1]
        return None

    @property
    def curves(self) -> set[int]:
        return {lab[1] for lab in self.labels if lab[0] == "curve"}


@dataclass
class Component:
    euler: int
    boundaries: list[Boundary]

    @property
    def genus(self) -> int:
        return (2 - self.euler - len(self.boundaries)) // 2

    @property
    def originals(self) -> frozenset[int]:
        return frozenset(b.original for b in self.boundaries if b.original is not None)


class PolygonComplex:
    """Discs glued along pairs of boundary arcs, orientation reversing.

    Each polygon is a counterclockwise list of edges ``(label, glue_key)``:
    free edges carry a label and no key, glued edges carry a key shared with
    exactly one other edge.
    """

    def __init__(self):
        self.polygons: list[list] = []

    def add(self, edges: list) -> None:
        self.polygons.append(edges)

    def components(self) -> list[Component]:
        glue: dict = defaultdict(list)
        for pi, poly in enumerate(self.polygons):
            for ei, (_, key) in enumerate(poly):
                if key is not None:
                    glue[key].append((pi, ei))
        partner = {}
        for key, ends in glue.items():
            if len(ends) != 2:
                raise AssertionError(f"glue key {key} used {len(ends)} times")
            partner[ends[0]] = ends[1]
            partner[ends[1]] = ends[0]

        parent = list(range(len(self.polygons)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (pa, _), (pb, _) in partner.items():
            parent[find(pa)] = find(pb)

        n_poly: dict[int, int] = defaultdict(int)
        n_glue: dict[int, int] = defaultdict(int)
        for pi in range(len(self.polygons)):
            n_poly[find(pi)] += 1
        for (pa, _) in partner:
            n_glue[find(pa)] += 1  # counted from both sides

        boundaries: dict[int, list[Boundary]] = defaultdict(list)
        done = set()
        for pi, poly in enumerate(self.polygons):
            for ei, (lab, key) in enumerate(poly):
                if key is not None or (pi, ei) in done:
                    continue
                labels = []
                cur = (pi, ei)
                while cur not in done:
                    done.add(cur)
                    labels.append(self.polygons[cur[0]][cur[1]][0])
                    cur = self._next_free(cur, partner)
                boundaries[find(pi)].append(Boundary(labels))

        roots = sorted(n_poly, key=lambda r: r)
        return [Component(n_poly[r] - n_glue[r] // 2, boundaries.get(r, [])) for r in roots]

    def _next_free(self, cur, partner):
        pi, ei = cur
        while True:
            poly = self.polygons[pi]
            ei = (ei + 1) % len(poly)
            if poly[ei][1] is None:
                return (pi, ei)
            pi, ei = partner[(pi, ei)]
