"""Reduced and cyclically reduced words in a free group.

Letters are non-zero integers: ``k`` is the ``k``-th generator (1-based) and
``-k`` its inverse.  Words are tuples of letters.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[int, ...]


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Iterable[int]) -> Word:
    r = free_reduce(w)
    i, j = 0, len(r)
    while j - i >= 2 and r[i] == -r[j - 1]:
        i += 1
        j -= 1
    return r[i:j]


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    n = len(w)
    return all(w[i] != -w[(i + 1) % n] for i in range(n)) if n > 1 else True


def letter_rank(x: int) -> int:
    """Sort rank: a generator sorts immediately before its inverse."""
    return 2 * (abs(x) - 1) + (x < 0)


def least_rotation(s: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(s)
    if n == 0:
        return 0
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j % n]
        i = f[j - k - 1]
        while i != -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j - i - 1
            i = f[i]
        if i == -1 and sj != s[(k + i + 1) % n]:
            if sj < s[(k + i + 1) % n]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def _min_rotation(w: Word) -> tuple[tuple[int, ...], Word]:
    ranks = [letter_rank(x) for x in w]
    k = least_rotation(ranks)
    return tuple(ranks[k:] + ranks[:k]), w[k:] + w[:k]


def canonical(w: Iterable[int]) -> Word:
    """Canonical representative of the unoriented conjugacy class of ``w``.

    The word is freely and cyclically reduced, then the least rotation of
    either it or its inverse is returned, so ``w``, its conjugates and its
    inverse all share a canonical form.
    """
    r = cyclic_reduce(w)
    if not r:
        return r
    k1, r1 = _min_rotation(r)
    k2, r2 = _min_rotation(inverse(r))
    return r1 if k1 <= k2 else r2


def oriented_canonical(w: Iterable[int]) -> Word:
    """Least rotation of the cyclic reduction, keeping the orientation."""
    r = cyclic_reduce(w)
    return _min_rotation(r)[1] if r else r


def primitive_root(w: Word) -> tuple[Word, int]:
    """Write a cyclically reduced word as ``u ** k`` with ``u`` not a proper power."""
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d], n // d
    return w, 1


def abelianization(w: Iterable[int], rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)
