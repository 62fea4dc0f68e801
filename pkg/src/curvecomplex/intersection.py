"""Intersection numbers of closed geodesics by linked-pair counting.

Two reduced cyclic paths on a ribbon graph cross once for every maximal
common segment (of length zero or more, traversed in the same or opposite
directions) whose two ends are linked: the paths come in from opposite sides
and leave towards opposite sides.  For primitive classes the count is the
minimal number of intersection points.
"""

from __future__ import annotations

import numpy as np

from .spine import SpineModel, end_half_edge, start_half_edge
from .words import Word, inverse, primitive_root

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None


def _linked_py(model: SpineModel, w1: Word, w2: Word, *, self_pairing: bool) -> int:
    """Linked common segments of ``w1`` against ``w2`` and against its inverse."""
    m, n = len(w1), len(w2)
    off = model.ccw_offset
    pos = model.position
    nh = model.n_half_edges
    limit = m + n
    count = 0
    ends1 = [end_half_edge(x) for x in w1]
    starts1 = [start_half_edge(x) for x in w1]
    for forward in (True, False):
        u = w2 if forward else inverse(w2)
        ends2 = [end_half_edge(x) for x in u]
        starts2 = [start_half_edge(x) for x in u]
        for i in range(m):
            a = ends1[i]
            for j in range(n):
                if self_pairing and forward and i == j:
                    continue
                c = ends2[j]
                if a == c:
                    continue
                k = 0
                while k < limit and w1[(i + 1 + k) % m] == u[(j + 1 + k) % n]:
                    k += 1
                if k >= limit:
                    continue
                b = starts1[(i + 1 + k) % m]
                d = starts2[(j + 1 + k) % n]
                if k == 0:
                    # meeting at the vertex only: counted once, in the forward pass
                    if not forward or a == d or b == c:
                        continue
                    pa, pb, pc, pd = pos[a], pos[b], pos[c], pos[d]
                    span = (pb - pa) % nh
                    if (0 < (pc - pa) % nh < span) != (0 < (pd - pa) % nh < span):
                        count += 1
                else:
                    s = starts1[(i + 1) % m]
                    t = ends1[(i + k) % m]
                    left_in = off(s, a) < off(s, c)
                    if left_in == (off(t, b) < off(t, d)):
                        count += 1
    return count


def _kernel(w1, w2, pos, nh, self_pairing, cap):
    # counting stops as soon as it exceeds cap (cap < 0: never)
    m, n = w1.shape[0], w2.shape[0]
    limit = m + n
    count = 0
    for rev in range(2):
        u = np.empty(n, dtype=np.int64)
        for j in range(n):
            u[j] = w2[j] if rev == 0 else -w2[n - 1 - j]
        for i in range(m):
            x = w1[i]
            a = 2 * (x - 1) + 1 if x > 0 else 2 * (-x - 1)
            for j in range(n):
                if self_pairing and rev == 0 and i == j:
                    continue
                y = u[j]
                c = 2 * (y - 1) + 1 if y > 0 else 2 * (-y - 1)
                if a == c:
                    continue
                k = 0
                while k < limit and w1[(i + 1 + k) % m] == u[(j + 1 + k) % n]:
                    k += 1
                if k >= limit:
                    continue
                x2 = w1[(i + 1 + k) % m]
                y2 = u[(j + 1 + k) % n]
                b = 2 * (x2 - 1) if x2 > 0 else 2 * (-x2 - 1) + 1
                d = 2 * (y2 - 1) if y2 > 0 else 2 * (-y2 - 1) + 1
                if k == 0:
                    if rev == 1 or a == d or b == c:
                        continue
                    pa = pos[a]
                    span = (pos[b] - pa) % nh
                    pc = (pos[c] - pa) % nh
                    pd = (pos[d] - pa) % nh
                    if (0 < pc < span) != (0 < pd < span):
                        count += 1
                        if 0 <= cap < count:
                            return count
                else:
                    x1 = w1[(i + 1) % m]
                    s = 2 * (x1 - 1) if x1 > 0 else 2 * (-x1 - 1) + 1
                    xk = w1[(i + k) % m]
                    t = 2 * (xk - 1) + 1 if xk > 0 else 2 * (-xk - 1)
                    left_in = (pos[a] - pos[s]) % nh < (pos[c] - pos[s]) % nh
                    left_out = (pos[b] - pos[t]) % nh < (pos[d] - pos[t]) % nh
                    if left_in == left_out:
                        count += 1
                        if 0 <= cap < count:
                            return count
    return count


def _row(flat, offs, i, js, pos, nh, cap):
    w1 = flat[offs[i]:offs[i + 1]]
    out = np.zeros(js.shape[0], dtype=np.int64)
    for t in range(js.shape[0]):
        j = js[t]
        if j != i:
            out[t] = _kernel(w1, flat[offs[j]:offs[j + 1]], pos, nh, False, cap)
    return out


if njit is not None:
    _kernel = njit(cache=True, nogil=True)(_kernel)
    _row = njit(cache=True, nogil=True)(_row)

_POS_TABLES: dict = {}


def _positions(model: SpineModel):
    pos = _POS_TABLES.get(model.surface)
    if pos is None:
        pos = np.array([model.position[h] for h in range(model.n_half_edges)], dtype=np.int64)
        _POS_TABLES[model.surface] = pos
    return pos


def _linked(model: SpineModel, w1: Word, w2: Word, *, self_pairing: bool, cap: int = -1) -> int:
    return int(_kernel(np.array(w1, dtype=np.int64), np.array(w2, dtype=np.int64),
                       _positions(model), model.n_half_edges, self_pairing, cap))


class WordTable:
    """Distinct primitive words packed for batched intersection counts."""

    def __init__(self, model: SpineModel, words: list[Word]):
        self.model = model
        self.words = list(words)
        offs = np.zeros(len(words) + 1, dtype=np.int64)
        for k, w in enumerate(words):
            offs[k + 1] = offs[k] + len(w)
        self.offsets = offs
        self.flat = np.array([x for w in words for x in w], dtype=np.int64)

    def __len__(self):
        return len(self.words)

    def row(self, i: int, js=None, cap: int = -1) -> np.ndarray:
        """Intersection numbers of word ``i`` with words ``js`` (all by default).

        With ``cap >= 0`` an entry is only exact up to ``cap``; larger values
        mean "more than cap".  Entry ``i`` itself is reported as 0.
        """
        if js is None:
            js = np.arange(len(self.words), dtype=np.int64)
        else:
            js = np.asarray(js, dtype=np.int64)
        return _row(self.flat, self.offsets, i, js, _positions(self.model), self.model.n_half_edges, cap)

    def disjoint_from(self, i: int, js=None) -> np.ndarray:
        """Boolean mask over ``js``: which words are disjoint from word ``i`` (``i`` excluded)."""
        if js is None:
            js = np.arange(len(self.words), dtype=np.int64)
        js = np.asarray(js, dtype=np.int64)
        return (self.row(i, js, cap=0) == 0) & (js != i)


def linked_pair_intersection(model: SpineModel, w1: Word, w2: Word, cap: int = -1) -> int:
    """Geometric intersection number of two distinct primitive cyclically reduced words.

    With ``cap >= 0`` counting stops once the count exceeds ``cap``.
    """
    return _linked(model, w1, w2, self_pairing=False, cap=cap)


def linked_pair_self_intersection(model: SpineModel, w: Word) -> int:
    """Minimal self-intersection of the free homotopy class of ``w``.

    A proper power ``u ** k`` has ``k**2 * si(u) + k - 1`` self-intersections.
    """
    root, k = primitive_root(w)
    si = _linked(model, root, root, self_pairing=True) // 2
    return k * k * si + k - 1
