"""Mapping classes acting on curves through automorphisms of the free group.

Each generator of a model's mapping class group is stored as the images of
the free generators under a basepoint-fixing representative automorphism.

Dehn twists are not tabulated by hand.  The automorphism of a twist about a
simple curve ``c`` is read off a drawing of ``c``: every generator loop is
drawn from a basepoint on the vertex disc through its band and back, and at
each crossing with ``c`` a full copy of ``c`` is spliced in, turning the same
way each time.  The turning direction is fixed once for all models so that on
the one-holed torus the twist about ``a1`` sends ``b1`` to the class of
``a1 b1``.

Half-twists exchange two boundary components and are given by Artin-type
formulas on the boundary generators.  Every generator is validated on
construction: it must map the boundary classes to boundary classes, and its
stored inverse must undo it letter for letter.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .curves import Curve, geometric_intersection, make_curve
from .drawing import Drawing
from .spine import SpineModel, UnsupportedSurface, WordSyntaxError, spine_model
from .surface import SurfaceType
from .words import Word, canonical, cyclic_reduce, free_reduce, inverse

Substitution = tuple[Word, ...]  # image of generator k at index k - 1


def substitute(sub: Substitution, w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        img = sub[x - 1] if x > 0 else inverse(sub[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def compose_substitutions(f: Substitution, g: Substitution) -> Substitution:
    """Substitution of ``f`` after ``g``."""
    return tuple(substitute(f, img) for img in g)


def identity_substitution(rank: int) -> Substitution:
    return tuple((k,) for k in range(1, rank + 1))


# -- twists ------------------------------------------------------------------------------

# The positive twist turns right onto the crossed curve.  With the ribbon
# structure used by SpineModel this gives T_{a1}(b1) = a1 b1.
_POSITIVE_TURNS_LEFT = False


def twist_substitution(model: SpineModel, c: Word, positive: bool = True) -> Substitution:
    """Basepoint-fixing automorphism of the Dehn twist about the simple class ``c``."""
    d = Drawing(model, [cyclic_reduce(c)])
    left = positive == _POSITIVE_TURNS_LEFT
    p0 = d.point("corner", model.rotation[0])
    images = []
    for e in range(model.rank):
        h_out, h_in = 2 * e, 2 * e + 1
        # run along the leftmost strip of the band, which touches no strand of c
        k = len(d.band[e])
        out_pt = d.point("gap", (h_out, k))
        in_pt = d.point("gap", (h_in, 0))
        word: list[int] = []
        for loop in d.splices_along(p0, out_pt, 0, left):
            word.extend(loop)
        word.append(e + 1)
        for loop in d.splices_along(in_pt, p0, 0, left):
            word.extend(loop)
        images.append(free_reduce(word))
    return tuple(images)


def half_twist_substitutions(model: SpineModel, i: int) -> tuple[Substitution, Substitution]:
    """Automorphism (and inverse) exchanging boundary components ``i - 1`` and ``i``.

    For ``i`` below the number of ``z`` generators the loops ``z_i`` and
    ``z_{i+1}`` are exchanged; for the last ``z`` generator the exchange is with
    the outer boundary component.
    """
    g = model.surface.genus
    n = model.surface.boundary - 1
    if not 1 <= i <= n:
        raise ValueError(f"no half-twist h{i} on {model.surface}")
    zi = 2 * g + i
    ident = list(identity_substitution(model.rank))
    fwd, bwd = list(ident), list(ident)
    outer = model.boundary_words[-1]
    if i < n:
        pos = outer.index(zi)
        if outer[(pos + 1) % len(outer)] != zi + 1:
            raise UnsupportedSurface("boundary generators are not adjacent on the outer boundary")
        fwd[zi - 1] = (zi, zi + 1, -zi)
        fwd[zi] = (zi,)
        bwd[zi - 1] = (zi + 1,)
        bwd[zi] = (-(zi + 1), zi, zi + 1)
    else:
        # outer word = P z_n cyclically; z_n -> P^-1 z_n^-1 swaps the two faces
        pos = outer.index(zi)
        rest = outer[pos + 1:] + outer[:pos]
        fwd[zi - 1] = free_reduce(inverse(rest) + (-zi,))
        bwd[zi - 1] = free_reduce((-zi,) + inverse(rest))
    return tuple(fwd), tuple(bwd)


# -- generator sets ----------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str  # "twist" or "half-twist"
    core: Curve  # twist curve, or the curve enclosing the exchanged boundaries
    forward: Substitution
    backward: Substitution


class GeneratorSet:
    """Fixed generators of the mapping class group of one model.

    Symbol ``k`` (1-based) is the ``k``-th generator, ``-k`` its inverse.
    Twists are named ``t1, t2, ...`` after the base curves they twist about and
    half-twists ``h1, h2, ...``; ``'`` marks an inverse in literals.
    """

    def __init__(self, model: SpineModel):
        self.model = model
        cores, extra = base_curves(model)
        self.twist_curves: tuple[Curve, ...] = tuple(cores)
        self.base_curves: tuple[Curve, ...] = tuple(cores) + tuple(extra)
        gens = []
        for k, c in enumerate(self.twist_curves, 1):
            gens.append(Generator(f"t{k}", "twist", c, twist_substitution(model, c.word, True),
                                  twist_substitution(model, c.word, False)))
        # the last half-twist exchanges a z-boundary with the outer one
        for i in range(1, model.surface.boundary):
            fwd, bwd = half_twist_substitutions(model, i)
            gens.append(Generator(f"h{i}", "half-twist", _half_twist_core(model, i), fwd, bwd))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self._index = {g.name: k for k, g in enumerate(gens, 1)}
        self._validate()

    def __len__(self):
        return len(self.generators)

    @property
    def symbols(self) -> tuple[int, ...]:
        """All generator symbols and their inverses, in shortlex order."""
        out = []
        for k in range(1, len(self.generators) + 1):
            out += [k, -k]
        return tuple(out)

    def substitution(self, symbol: int) -> Substitution:
        g = self.generators[abs(symbol) - 1]
        return g.forward if symbol > 0 else g.backward

    def symbol_name(self, symbol: int) -> str:
        return self.generators[abs(symbol) - 1].name + ("'" if symbol < 0 else "")

    def format(self, word: Sequence[int]) -> str:
        return " ".join(self.symbol_name(s) for s in word) if word else "id"

    def parse(self, text: str) -> tuple[int, ...]:
        out = []
        for tok in text.replace(",", " ").split():
            if tok == "id":
                continue
            m = re.fullmatch(r"([a-z]\d+)('*)", tok)
            if m is None or m.group(1) not in self._index:
                raise WordSyntaxError(f"unknown mapping class generator {tok!r} "
                                      f"(have: {' '.join(g.name for g in self.generators)})")
            k = self._index[m.group(1)]
            out.append(k if len(m.group(2)) % 2 == 0 else -k)
        return tuple(out)

    def _validate(self):
        m = self.model
        ident = identity_substitution(m.rank)
        bnd = {canonical(w) for w in m.boundary_words}
        for g in self.generators:
            for f, b in ((g.forward, g.backward), (g.backward, g.forward)):
                if compose_substitutions(f, b) != ident:
                    raise AssertionError(f"{g.name}: stored inverse does not undo the automorphism")
                if {canonical(substitute(f, w)) for w in m.boundary_words} != bnd:
                    raise AssertionError(f"{g.name} does not preserve the boundary classes")


def _half_twist_core(model: SpineModel, i: int) -> Curve:
    g = model.surface.genus
    n = model.surface.boundary - 1
    zi = 2 * g + i
    if i < n:
        return make_curve(model, (zi, zi + 1))
    outer = model.boundary_words[-1]
    pos = outer.index(zi)
    return make_curve(model, outer[pos + 1:] + outer[:pos])


def _handle(i: int) -> tuple[int, int]:
    return 2 * i - 1, 2 * i


def base_curves(model: SpineModel) -> tuple[list[Curve], list[Curve]]:
    """Twist curves of the generators, and further curves seeding enumeration.

    Together they contain a curve of every topological type the model carries
    (non-separating, outer, other separating), so their orbits exhaust the
    curve complex.
    """
    s = model.surface
    g, n = s.genus, s.boundary - 1
    z = [2 * g + j for j in range(1, n + 1)]
    cores: list[Curve] = []
    extra: list[Curve] = []

    def add(w, to):
        c = make_curve(model, w)
        if c not in cores and c not in extra:
            to.append(c)

    if g == 0:
        if n < 3:
            raise UnsupportedSurface(f"{s} has no curves")
        for j in range(n - 1):
            add((z[j], z[j + 1]), cores)
        for k in range(3, (n + 1) // 2 + 1):
            add(tuple(z[:k]), extra)
        return cores, extra

    for i in range(1, g + 1):
        a, b = _handle(i)
        add((a,), cores)
        add((b,), cores)
    for i in range(1, g):
        add(_search_curve(model, lambda c, i=i: _chain_link(model, c, i)), cores)
    a, b = _handle(g)
    for j in range(1, n + 1):
        add((a,) + tuple(z[:j]), cores)
    if n >= 1:
        add((b, a, -b, -a), extra)
    if n >= 2:
        add((z[0], z[1]), extra)
    return cores, extra


def _chain_link(model: SpineModel, c: Curve, i: int) -> bool:
    curves = {}
    for k in range(1, model.surface.genus + 1):
        a, b = _handle(k)
        curves[("a", k)] = Curve(model.surface, (a,))
        curves[("b", k)] = Curve(model.surface, (b,))
    for (kind, k), d in curves.items():
        want = 1 if kind == "b" and k in (i, i + 1) else 0
        if geometric_intersection(c, d) != want:
            return False
    return True


def _search_curve(model: SpineModel, pred, maxlen: int = 6) -> Word:
    from itertools import product
    letters = [x for k in range(1, model.rank + 1) for x in (k, -k)]
    seen = set()
    for n in range(1, maxlen + 1):
        for w in product(letters, repeat=n):
            c = canonical(w)
            if len(c) != n or c in seen:
                continue
            seen.add(c)
            try:
                cur = make_curve(model, c)
            except ValueError:
                continue
            if pred(cur):
                return c
    raise UnsupportedSurface(f"no suitable base curve on {model.surface}")


@lru_cache(maxsize=None)
def _generator_set(surface: SurfaceType) -> GeneratorSet:
    return GeneratorSet(spine_model(surface))


def generator_set(model: SpineModel | SurfaceType | str) -> GeneratorSet:
    if isinstance(model, SpineModel):
        return _generator_set(model.surface)
    return _generator_set(spine_model(model).surface)


# -- mapping classes -------------------------------------------------------------------


@dataclass(frozen=True)
class MappingClass:
    """Word in the generator symbols of a model, read as a composition.

    ``MappingClass(s, (u, v))`` is ``u`` after ``v``: ``v`` is applied first.
    """

    surface: SurfaceType
    word: tuple[int, ...] = ()

    @property
    def generators(self) -> GeneratorSet:
        return generator_set(self.surface)

    @classmethod
    def identity(cls, surface: SurfaceType) -> "MappingClass":
        return cls(surface, ())

    @classmethod
    def parse(cls, model: SpineModel | SurfaceType | str, text: str) -> "MappingClass":
        gs = generator_set(model)
        return cls(gs.model.surface, gs.parse(text))

    def __str__(self):
        return self.generators.format(self.word)

    def __len__(self):
        return len(self.word)

    def __matmul__(self, other: "MappingClass") -> "MappingClass":
        return compose(self, other)

    @property
    def substitution(self) -> Substitution:
        return _substitution(self.surface, self.word)

    def __call__(self, c: Curve) -> Curve:
        return apply(self, c)


def compose(*mcs: MappingClass) -> MappingClass:
    if not mcs:
        raise ValueError("nothing to compose")
    surfaces = {m.surface for m in mcs}
    if len(surfaces) != 1:
        from .curves import ModelMismatch
        raise ModelMismatch("mapping classes of different surfaces")
    return MappingClass(mcs[0].surface, tuple(x for m in mcs for x in m.word))


def invert(m: MappingClass) -> MappingClass:
    return MappingClass(m.surface, tuple(-x for x in reversed(m.word)))


@lru_cache(maxsize=1 << 14)
def _substitution(surface: SurfaceType, word: tuple[int, ...]) -> Substitution:
    gs = _generator_set(surface)
    if not word:
        return identity_substitution(gs.model.rank)
    return compose_substitutions(gs.substitution(word[0]), _substitution(surface, word[1:]))


@lru_cache(maxsize=1 << 20)
def apply_symbol(surface: SurfaceType, symbol: int, w: Word) -> Word:
    """Canonical image of a canonical curve word under one generator symbol."""
    return canonical(substitute(_generator_set(surface).substitution(symbol), w))


def apply(mc: MappingClass, c: Curve) -> Curve:
    if mc.surface != c.surface:
        from .curves import ModelMismatch
        raise ModelMismatch(f"mapping class of {mc.surface} applied to a curve on {c.surface}")
    w = c.word
    if len(mc.word) <= 8:
        for x in reversed(mc.word):
            w = apply_symbol(c.surface, x, w)
    else:
        w = canonical(substitute(mc.substitution, w))
    return Curve(c.surface, w)


def twist(c: Curve, power: int = 1) -> Substitution:
    """Automorphism of ``T_c ** power`` for an arbitrary curve ``c``."""
    model = c.model
    f = twist_substitution(model, c.word, power > 0)
    out = identity_substitution(model.rank)
    for _ in range(abs(power)):
        out = compose_substitutions(f, out)
    return out


def act(sub: Substitution, c: Curve) -> Curve:
    return Curve(c.surface, canonical(substitute(sub, c.word)))


def random_mapping_class(surface: SurfaceType, length: int, rng: random.Random) -> MappingClass:
    """Uniform random word of exactly ``length`` symbols without cancelling neighbours."""
    syms = generator_set(surface).symbols
    word: list[int] = []
    while len(word) < length:
        x = rng.choice(syms)
        if word and word[-1] == -x:
            continue
        word.append(x)
    return MappingClass(surface, tuple(word))


def hyperelliptic_word(surface: SurfaceType) -> MappingClass | None:
    """A word for the hyperelliptic involution on the one- and two-holed torus."""
    if surface == SurfaceType(1, 1):
        return MappingClass(surface, (1, 2) * 3)
    if surface == SurfaceType(1, 2):
        # swap the boundaries by a half-twist, then undo the half-turn of the handle
        return MappingClass.parse(surface, "h1 t1' t2' t1' t2' t1' t2'")
    return None


def involution_words(surface: SurfaceType) -> list[MappingClass]:
    """Known words acting trivially on all curves: the hyperelliptic involution(s) of the model.

    On the four-holed sphere these are two half-twist products exchanging the
    boundary components in pairs; together they generate a Klein four-group.
    """
    h = hyperelliptic_word(surface)
    if h is not None:
        return [h]
    if surface == SurfaceType(0, 4):
        return [MappingClass.parse(surface, "h1 h3'"), MappingClass.parse(surface, "h2 h1 h3' h2'")]
    return []


def _power(x: int, k: int) -> Word:
    return (x,) * k if k >= 0 else (-x,) * (-k)


def is_inner(sub: Substitution) -> bool:
    """Whether the automorphism is conjugation by a fixed element (the trivial mapping class)."""
    u = sub[0]
    n = len(u)
    if n % 2 == 0 or u[n // 2] != 1:
        return False
    h = n // 2
    p = u[:h]
    if inverse(u[h + 1:]) != p:
        return False
    k = None
    for j in range(1, len(sub)):
        v = free_reduce(inverse(p) + sub[j] + p)
        lead = 0
        while lead < len(v) and v[lead] == v[0] and abs(v[0]) == 1:
            lead += 1
        kj = lead if v and v[0] == 1 else -lead
        if v != _power(1, kj) + (j + 1,) + _power(1, -kj):
            return False
        if k is not None and kj != k:
            return False
        k = kj
    return True


def boundary_permutation(mc: MappingClass) -> tuple[int, ...]:
    """Where each boundary component goes, as indices into the model's boundary words."""
    m = spine_model(mc.surface)
    sub = mc.substitution
    out = []
    for w in m.boundary_words:
        j = m.peripheral_index(canonical(substitute(sub, w)))
        if j is None:
            raise AssertionError("a boundary class was not sent to a boundary class")
        out.append(j)
    return tuple(out)
