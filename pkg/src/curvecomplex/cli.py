"""Command-line front end.

Exit status: 0 on success or when every check passes, 1 when a property
check fails (the report names a witness), 2 on usage or model errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from .complex import EnumerationStats, adjacency_graph, curve_set, is_pants_decomposition, pants_census
from .curves import Curve, algebraic_intersection, cut_along, curve_type, geometric_intersection, make_curve
from .farey import Slope, ball, local_certificate
from .mapping import (
    MappingClass,
    boundary_permutation,
    generator_set,
    involution_words,
    is_inner,
    random_mapping_class,
)
from .rigidity import VertexMap, fit_mapping_class, kernel_membership, kernel_scan, run_lemma_battery
from .spine import spine_model
from .surface import SurfaceType, complexity, inventory

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {n}")
    return n


def _surface(text: str) -> SurfaceType:
    try:
        return SurfaceType.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _curve(s: SurfaceType, text: str) -> Curve:
    m = spine_model(s)
    return make_curve(m, m.parse(text))


def _fmt_pieces(pieces) -> str:
    return ", ".join(f"{t}{{{','.join(str(i + 1) for i in sorted(o))}}}" for t, o in pieces)


# -- verbs -----------------------------------------------------------------------------


def cmd_surface_info(a, out) -> int:
    if a.inventory is not None:
        for s in sorted(inventory(a.inventory)):
            print(s, file=out)
        return EXIT_OK
    if a.surface is None:
        raise UsageError("surface-info needs a surface or --inventory K")
    s = a.surface
    print(f"surface {s}", file=out)
    print(f"complexity {complexity(s)}", file=out)
    print(f"euler {s.euler_characteristic}", file=out)
    m = spine_model(s)
    print(f"generators {' '.join(m.names)}", file=out)
    for i, w in enumerate(m.boundary_words, 1):
        print(f"boundary {i} {m.format(w)}", file=out)
    if complexity(s) >= 1:
        gs = generator_set(m)
        for g in gs.generators:
            print(f"{g.kind} {g.name} {g.core}", file=out)
        for c in gs.base_curves[len(gs.twist_curves):]:
            print(f"seed {c}", file=out)
    return EXIT_OK


def cmd_curves_enum(a, out) -> int:
    stats = EnumerationStats()
    cs = curve_set(a.surface, a.depth, cache_dir=a.cache_dir, jobs=a.jobs, stats=stats)
    text = "\n".join(cs.lines()) + "\n"
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if a.stats:
        print(f"stats generator_applications={stats.generator_applications} "
              f"cache_hits={stats.cache_hits} cache_writes={stats.cache_writes} curves={len(cs)}",
              file=sys.stderr)
    return EXIT_OK


def cmd_intersect(a, out) -> int:
    c1, c2 = _curve(a.surface, a.curve1), _curve(a.surface, a.curve2)
    print(geometric_intersection(c1, c2), file=out)
    if a.algebraic:
        print(f"algebraic {algebraic_intersection(c1, c2)}", file=out)
    return EXIT_OK


def cmd_classify(a, out) -> int:
    c = _curve(a.surface, a.curve)
    print(f"curve {c}", file=out)
    print(f"type {curve_type(c)}", file=out)
    print(f"pieces {_fmt_pieces(cut_along(c.model, [c]))}", file=out)
    return EXIT_OK


def cmd_pants_adjacency(a, out) -> int:
    s = a.surface
    if a.census:
        if a.depth is None:
            raise UsageError("--census needs --depth")
        cs = curve_set(s, a.depth, cache_dir=a.cache_dir, jobs=a.jobs)
        census = pants_census(cs, jobs=a.jobs)
        print(f"window {s} depth={a.depth} curves={len(cs)}", file=out)
        print(f"pants-decompositions {census.decompositions}", file=out)
        print(f"curve-type-classes {len(census.type_classes)}", file=out)
        for key, p in sorted(census.type_classes.items()):
            print(f"  types {' + '.join(key)} e.g. {' | '.join(map(str, p))}", file=out)
        print(f"graph-classes {census.n_graph_types}", file=out)
        for g, p in census.graph_classes:
            degs = sorted((d for _, d in g.degree()), reverse=True)
            print(f"  degrees {degs} edges {g.number_of_edges()} e.g. {' | '.join(map(str, p))}", file=out)
        return EXIT_OK
    if not a.curves:
        raise UsageError("pants-adjacency needs curve words or --census")
    q = [_curve(s, w) for w in a.curves]
    g = adjacency_graph(q)
    order = {c: i for i, c in enumerate(sorted(set(q)))}
    print(f"pants-decomposition {'yes' if is_pants_decomposition(q) else 'no'}", file=out)
    for c, i in order.items():
        print(f"vertex {i} {c} ({curve_type(c)})", file=out)
    for x, y in sorted(tuple(sorted((order[u], order[v]))) for u, v in g.edges):
        print(f"edge {x} {y}", file=out)
    return EXIT_OK


def cmd_farey_check(a, out) -> int:
    center = Slope.parse(a.center)
    ok = True
    radii = [a.radius] if a.exact else range(a.radius + 1)
    for r in radii:
        b = ball(center, r)
        cert = local_certificate(b)
        ok &= cert.ok
        print(f"radius {r} vertices={len(b.level)} edges={len(b.edges)} triangles={len(b.triangles)} "
              f"interior-edges={cert.interior_edges} in-two-triangles={cert.interior_edges - len(cert.bad_edges)} "
              f"dual-acyclic={'yes' if cert.dual_acyclic else 'no'} "
              f"interior-triangles={cert.interior_triangles} "
              f"trivalent={cert.interior_triangles - len(cert.bad_triangles)}", file=out)
        for e in cert.bad_edges:
            print(f"  bad-edge {e[0]} {e[1]}", file=out)
        for t in cert.bad_triangles:
            print(f"  bad-triangle {' '.join(map(str, t))}", file=out)
        if a.dump and r == a.radius:
            for line in b.edge_list():
                print(f"  edge {line}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _vertex_map(a) -> tuple[VertexMap, MappingClass | None]:
    if a.map_file and a.generate:
        raise UsageError("give either a map file or --generate, not both")
    if a.map_file:
        return VertexMap.load(a.map_file, preserve_separating=a.preserve_separating), None
    if a.generate is None:
        raise UsageError("need a vertex-map file or --generate SURFACE")
    if a.seed is None:
        raise UsageError("--generate needs an explicit --seed")
    if a.depth is None:
        raise UsageError("--generate needs --depth for the domain window")
    rng = random.Random(a.seed)
    f = random_mapping_class(a.generate, rng.randint(0, a.length), rng)
    cs = curve_set(a.generate, a.depth, cache_dir=a.cache_dir, jobs=a.jobs)
    return VertexMap.from_mapping_class(f, cs), f


def cmd_map_verify(a, out) -> int:
    v, f = _vertex_map(a)
    if f is not None:
        print(f"# generated by {f} (seed {a.seed})", file=out)
    rep = run_lemma_battery(v)
    print(rep, file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_map_fit(a, out) -> int:
    v, f = _vertex_map(a)
    if f is not None:
        print(f"# generated by {f} (seed {a.seed})", file=out)
    res = fit_mapping_class(v, a.maxlen, reference=f)
    for line in res.lines():
        print(line, file=out)
    return EXIT_OK if res.status == "fitted" else EXIT_FAIL


def cmd_kernel_scan(a, out) -> int:
    s = a.surface
    cs = curve_set(s, a.depth, cache_dir=a.cache_dir, jobs=a.jobs)
    ok = True
    for w in involution_words(s):
        fixes = kernel_membership(w, cs)
        ok &= fixes
        perm = " ".join(str(i + 1) for i in boundary_permutation(w))
        print(f"known {w} fixes-window={'yes' if fixes else 'no'} inner={'yes' if is_inner(w.substitution) else 'no'} "
              f"boundary-permutation {perm}", file=out)
    found = kernel_scan(s, a.maxlen, list(cs))
    print(f"scan maxlen={a.maxlen} depth={a.depth} window={len(cs)} nontrivial={len(found)}", file=out)
    for w in found[:a.limit]:
        perm = " ".join(str(i + 1) for i in boundary_permutation(w))
        print(f"  {w} boundary-permutation {perm}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvecomplex", description="Curves, curve complexes and rigidity checks.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, depth=False):
        sp.add_argument("--jobs", type=_nonneg, default=1, help="worker threads")
        sp.add_argument("--cache-dir", default=None, help="directory for curve-set cache files")
        if depth:
            sp.add_argument("--depth", type=_nonneg, default=None, help="enumeration depth")

    sp = sub.add_parser("surface-info", help="model, generators and complexity of a surface")
    sp.add_argument("surface", type=_surface, nargs="?")
    sp.add_argument("--inventory", type=_nonneg, default=None, metavar="K", help="list surfaces of complexity K")
    sp.set_defaults(run=cmd_surface_info)

    sp = sub.add_parser("curves-enum", help="enumerate a window of curves")
    sp.add_argument("surface", type=_surface)
    sp.add_argument("--depth", type=_nonneg, required=True)
    sp.add_argument("--output", default=None)
    sp.add_argument("--stats", action="store_true", help="print work counters to stderr")
    common(sp)
    sp.set_defaults(run=cmd_curves_enum)

    sp = sub.add_parser("intersect", help="geometric intersection number of two curves")
    sp.add_argument("surface", type=_surface)
    sp.add_argument("curve1")
    sp.add_argument("curve2")
    sp.add_argument("--algebraic", action="store_true")
    sp.set_defaults(run=cmd_intersect)

    sp = sub.add_parser("classify", help="type of a curve and the pieces it cuts off")
    sp.add_argument("surface", type=_surface)
    sp.add_argument("curve")
    sp.set_defaults(run=cmd_classify)

    sp = sub.add_parser("pants-adjacency", help="adjacency graph of a multicurve, or a census of a window")
    sp.add_argument("surface", type=_surface)
    sp.add_argument("curves", nargs="*")
    sp.add_argument("--census", action="store_true")
    common(sp, depth=True)
    sp.set_defaults(run=cmd_pants_adjacency)

    sp = sub.add_parser("farey-check", help="local certificates on Farey balls")
    sp.add_argument("--radius", type=_nonneg, required=True)
    sp.add_argument("--center", default="0/1")
    sp.add_argument("--exact", action="store_true", help="check only the given radius")
    sp.add_argument("--dump", action="store_true", help="print the edge list of the largest ball")
    sp.set_defaults(run=cmd_farey_check)

    for verb, fn, helptext in (("map-verify", cmd_map_verify, "run the lemma battery on a vertex map"),
                               ("map-fit", cmd_map_fit, "search for a mapping class inducing a vertex map")):
        sp = sub.add_parser(verb, help=helptext)
        sp.add_argument("map_file", nargs="?")
        sp.add_argument("--preserve-separating", action="store_true")
        sp.add_argument("--generate", type=_surface, default=None, metavar="SURFACE",
                        help="use the map induced by a random mapping class")
        sp.add_argument("--length", type=_nonneg, default=6, help="maximal random word length")
        sp.add_argument("--seed", type=int, default=None)
        if verb == "map-fit":
            sp.add_argument("--maxlen", type=_nonneg, required=True)
        common(sp, depth=True)
        sp.set_defaults(run=fn)

    sp = sub.add_parser("kernel-scan", help="words acting trivially on a window")
    sp.add_argument("surface", type=_surface)
    sp.add_argument("--maxlen", type=_nonneg, required=True)
    sp.add_argument("--depth", type=_nonneg, required=True)
    sp.add_argument("--limit", type=_nonneg, default=20, help="words to print")
    common(sp)
    sp.set_defaults(run=cmd_kernel_scan)
    return p


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return a.run(a, out)
    except (UsageError, ValueError, KeyError, OSError) as e:
        # ValueError covers malformed words, invalid curves, model mismatches and unsupported surfaces
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
