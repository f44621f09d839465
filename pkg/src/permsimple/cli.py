"""Command-line entry point: ``permsimple <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from importlib import resources
from math import factorial

from . import __version__
from .cayley import (
    build_gamma,
    components,
    export_dot,
    graph_to_json,
    is_planar,
    k33_witness,
)
from .classify import profile, quintuple_witness
from .complexes import (
    bs_filtration,
    class_complex,
    complex_to_json,
    euler_characteristic,
    order_complex,
    reduced_homology,
)
from .enumeration import CLASSES, census, count_formula, intersection_census, sigma_triangle
from .errors import BoundExceeded, InvariantViolation, ParseError, PermSimpleError
from .perm_core import (
    all_permutations,
    coxeter_length,
    coxeter_normal_form,
    cycle_decomposition,
    format_cycles,
    format_one_line,
    format_word,
    parse_cycles,
    parse_permutation,
)
from .polygon import (
    IrreducibleType,
    irreducible_type,
    neighboring_intervals,
    polygon_of_cycle,
    reduce_once,
)
from . import cayley

CAPS = {"census": 10, "graph": 9, "complex": 6}


def _cap(args, kind: str) -> int:
    return 10 ** 6 if args.unsafe_bounds else CAPS[kind]


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    return max(1, int(os.environ.get("PERMSIMPLE_JOBS", "1") or 1))


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args, out) -> int:
    fmt = None if args.input_format == "auto" else args.input_format
    p = parse_permutation(args.perm, args.n, fmt)
    prof = profile(p)
    if args.format == "json":
        d = {
            "one_line": list(p.word),
            "cycles": format_cycles(cycle_decomposition(p)),
            "normal_form": format_word(coxeter_normal_form(p)),
            "length": coxeter_length(p),
        }
        d.update(prof.to_dict())
        _dump(d, out)
        return 0
    out.write(f"one-line:    {format_one_line(p)}\n")
    out.write(f"cycles:      {format_cycles(cycle_decomposition(p))}\n")
    out.write(f"normal form: {format_word(coxeter_normal_form(p))}\n")
    out.write(f"length:      {coxeter_length(p)}\n")
    flags = (("s", prof.s_simple), ("c", prof.c_simple), ("g", prof.g_simple),
             ("b", prof.b_simple), ("t", prof.t_simple))
    out.write(",".join(f"{k}={_flag(v)}" for k, v in flags) + "\n")
    if prof.g_witness:
        out.write(f"g-witness:   {prof.g_witness[1]} cycle(s) of prime length {prof.g_witness[0]}\n")
    if prof.b_simple:
        out.write("with b: " + ",".join(
            f"{k}={_flag(getattr(prof, 'b_and_' + k))}" for k in "cgst") + "\n")
    return 0


def cmd_count(args, out) -> int:
    if args.triangle:
        tri = sigma_triangle(args.n)
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "i", "sigma"])
        for n in range(1, args.n + 1):
            for i, v in enumerate(tri.row(n)):
                w.writerow([n, i, v])
        return 0
    classes = list(CLASSES) if args.cls == "all" else [args.cls]
    first = args.start or args.n
    rows = []
    for n in range(first, args.n + 1):
        row = {"n": n}
        if args.method in ("census", "both"):
            rep = census(n, bound=_cap(args, "census"), jobs=_jobs(args),
                         check_formulas=args.method == "both")
            row.update({c: rep.counts[c] for c in classes})
            if args.cls == "all":
                row["total"] = rep.total
        else:
            for c in classes:
                row[c] = count_formula(c, n)
            if args.cls == "all":
                row["total"] = factorial(n)
        rows.append(row)
    if args.format == "json":
        _dump(rows, out)
        return 0
    fields = ["n"] + classes + (["total"] if args.cls == "all" else [])
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow(["" if row[f] is None else row[f] for f in fields])
    return 0


def cmd_graph(args, out) -> int:
    g = build_gamma(args.n, args.cls, bound=_cap(args, "graph"))
    comps = components(g) if args.components else None
    planarity = is_planar(g) if args.planarity else None
    if args.dot:
        text = export_dot(g, components_flag=args.components, marks=args.marks)
        if args.dot == "-":
            out.write(text)
        else:
            with open(args.dot, "w") as fh:
                fh.write(text)
    if args.json:
        data = graph_to_json(g, with_components=args.components, planarity=planarity)
        if args.json == "-":
            _dump(data, out)
        else:
            with open(args.json, "w") as fh:
                fh.write(json.dumps(data, indent=2) + "\n")
    if args.dot == "-" or args.json == "-":
        return 0
    out.write(f"Gamma({args.cls}S_{args.n}): {g.order} vertices, {g.size} edges\n")
    if comps is not None:
        out.write(f"{len(comps)} components\n")
        sizes = sorted((len(c) for c in comps), reverse=True)
        out.write("sizes: " + " ".join(map(str, sizes)) + "\n")
        singles = [format_cycles(cycle_decomposition(g.vertices[c[0]]))
                   for c in comps if len(c) == 1]
        if singles and len(singles) <= 20:
            out.write("singletons: " + " ".join(singles) + "\n")
    if planarity is not None:
        if planarity.planar:
            out.write(f"planar: true (embedding verified, {planarity.faces} faces)\n")
        else:
            k = planarity.kuratowski
            out.write(f"planar: false ({k.kind} subdivision verified, "
                      f"{k.edge_count()} edges)\n")
            if k.kind != "K3,3":
                w = k33_witness(g)
                if w is not None:
                    out.write(f"K3,3 subdivision: {w.edge_count()} edges\n")
            branch = [format_one_line(g.vertices[v]) for v in k.branch]
            out.write("branch vertices: " + " | ".join(branch) + "\n")
    return 0


def _parse_polygon(text: str, n: int | None):
    s = text.strip()
    if s.startswith("("):
        p = parse_cycles(s, n)
        cycles = cycle_decomposition(p).cycles
        if len(cycles) != 1:
            raise ParseError(f"expected a single cycle, got {format_cycles(cycle_decomposition(p))}")
        return polygon_of_cycle(cycles[0], p.n)
    verts = [int(x) for x in s.replace(",", " ").split()]
    return polygon_of_cycle(verts, n)


def cmd_polygon(args, out) -> int:
    poly = _parse_polygon(args.cycle, args.n)
    moves = reduce_once(poly)
    t = irreducible_type(poly)
    result = {"polygon": list(poly.vertices), "n": poly.n,
              "reductions": [list(m.vertices) for m in moves]}
    if isinstance(t, IrreducibleType):
        result["irreducible_type"] = list(t.vertices)
        result["neighboring_intervals"] = {
            str(a): {"minus": list(m), "plus": list(p)}
            for a, (m, p) in sorted(neighboring_intervals(t).items())}
    else:
        result["irreducible_type"] = "triangle"
    if args.format == "json":
        _dump(result, out)
        return 0
    out.write(f"polygon: {poly}\n")
    out.write("one-step reductions: " + (" ".join(map(str, moves)) or "none") + "\n")
    if isinstance(t, IrreducibleType):
        out.write(f"irreducible type: {t}\n")
        for a, (m, p) in sorted(neighboring_intervals(t).items()):
            def show(r):
                return "{" + ",".join(map(str, r)) + "}" if len(r) else "{}"
            out.write(f"  I-({a}) = {show(m)}  I+({a}) = {show(p)}\n")
    else:
        out.write("irreducible type: triangle class\n")
    return 0


def cmd_complex(args, out) -> int:
    cap = _cap(args, "complex")
    if args.n > cap:
        raise BoundExceeded(f"complex of degree {args.n} exceeds the bound {cap}")
    if args.space == "P":
        cx = class_complex(args.n, args.cls, bound=cap)
    else:
        pred = cayley.CLASS_PREDICATES[args.cls]
        A = [p for p in all_permutations(args.n) if pred(p)]
        cx = order_complex(A, "bruhat" if args.space == "B" else "weak")
        cx.name = f"{args.space}({args.cls}S_{args.n})"
    stages = None
    if args.filtration:
        if args.space != "P" or args.cls != "b":
            raise PermSimpleError("--filtration applies to --space P --class b only")
        stages = bs_filtration(args.n, bound=cap + 1 if args.unsafe_bounds else cap)
    if args.format == "json":
        data = complex_to_json(cx, homology=args.homology, euler=args.euler)
        if stages is not None:
            data["filtration"] = [
                {"j": s.j, "counts": s.complex.counts(),
                 "new_vertices": [list(p.word) for p in s.new_vertices],
                 "collapse": None if s.collapse is None else {
                     "success": s.collapse.success, "steps": s.collapse.steps,
                     "remaining": s.collapse.remaining}}
                for s in stages]
        _dump(data, out)
        return 0
    out.write(f"{cx.name}: cells by dimension {cx.counts()}\n")
    if args.euler:
        out.write(f"euler characteristic: {euler_characteristic(cx)}\n")
    if args.homology:
        for h in reduced_homology(cx):
            tors = "".join(f" + Z/{t}" for t in h.torsion)
            out.write(f"  reduced H_{h.dim}: Z^{h.rank}{tors}\n")
    if stages is not None:
        for s in stages:
            out.write(f"F_{s.j}: {s.complex.counts()}, {len(s.new_vertices)} new vertices"
                      + (f", {s.collapse}" if s.collapse else "") + "\n")
    return 0


def _golden(name: str) -> list[dict]:
    text = resources.files("permsimple").joinpath("data", name).read_text()
    return list(csv.DictReader(io.StringIO(text)))


def cmd_selftest(args, out) -> int:
    failures = 0

    def report(label: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        failures += not ok
        out.write(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "") + "\n")

    tri = sigma_triangle(5)
    for row in _golden("sigma_triangle.csv"):
        n, i, v = int(row["n"]), int(row["i"]), int(row["sigma"])
        if tri(n, i) != v:
            report(f"sigma({n},{i})", False, f"got {tri(n, i)}, table {v}")
    report("sigma triangle rows 1..5", failures == 0)

    for row in _golden("census_table.csv"):
        n = int(row["n"])
        rep = census(n, jobs=_jobs(args))
        want = {c: int(row[c]) for c in CLASSES}
        report(f"census n={n}", rep.counts == want,
               "" if rep.counts == want else f"got {rep.counts}")

    g = build_gamma(5, "c")
    comps = components(g)
    singles = sorted(format_cycles(cycle_decomposition(g.vertices[c[0]]))
                     for c in comps if len(c) == 1)
    report("Gamma(cS_5) components", len(comps) == 3 and singles == ["(5 2 4 1 3)", "(5 3 1 4 2)"],
           f"{len(comps)} components, singletons {' '.join(singles)}")

    got = intersection_census(6)
    column = "computed" if args.known_errata else "published"
    for row in _golden("intersections_n6.csv"):
        pair, want = row["pair"], int(row[column])
        note = f"got {got[pair]}, {column} {want}"
        if args.known_errata and row["published"] != row["computed"]:
            note += f", published value {row['published']} is a known erratum"
        report(f"|bS_6 ∩ {pair[1]}S_6|", got[pair] == want, note)

    present = [n for n in range(1, 9) if quintuple_witness(n) is not None]
    report("all five classes meet exactly for n in {1,2,5,7}", present == [1, 2, 5, 7], f"{present}")
    out.write(f"{failures} failure(s)\n")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permsimple",
        description="Simple permutations: classes, counts, Cayley graphs, polygons, complexes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes for censuses (default: $PERMSIMPLE_JOBS or 1)")
    parser.add_argument("--unsafe-bounds", action="store_true",
                        help="lift the safety caps on n (census 10, graph 9, complex 6)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="class membership of one permutation")
    p.add_argument("perm", help='one-line "4 1 6 2 5 3", cycles "(4 2 1)(6 3)" or word "D(3,1)D(5,3)"')
    p.add_argument("--n", type=int, default=None, help="degree (default: inferred)")
    p.add_argument("--input-format", choices=["auto", "one-line", "cycle", "word"], default="auto")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count", help="class sizes by census or closed formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="start", type=int, default=None, metavar="M",
                   help="emit rows M..n instead of n alone")
    p.add_argument("--class", dest="cls", choices=["all", *CLASSES], default="all")
    p.add_argument("--method", choices=["census", "formula", "both"], default="both")
    p.add_argument("--triangle", action="store_true", help="print the b-simple length triangle")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("graph", help="induced Cayley subgraph of a class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=sorted(cayley.CLASS_PREDICATES), default="b")
    p.add_argument("--components", action="store_true")
    p.add_argument("--planarity", action="store_true")
    p.add_argument("--marks", default="", help="DOT decorations, any of c g s t")
    p.add_argument("--dot", metavar="FILE", help="write DOT ('-' for stdout)")
    p.add_argument("--json", metavar="FILE", help="write JSON ('-' for stdout)")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("polygon", help="reductions and irreducible type of a cycle")
    p.add_argument("cycle", help='"(6 1 4 2 5)" or "6 1 4 2 5"')
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("complex", help="permutahedron subcomplex or order complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--space", choices=["P", "B", "W"], default="P")
    p.add_argument("--class", dest="cls", choices=sorted(cayley.CLASS_PREDICATES), default="b")
    p.add_argument("--homology", action="store_true")
    p.add_argument("--euler", action="store_true")
    p.add_argument("--filtration", action="store_true",
                   help="stages from P(bS_{n+1}) down to P(bS_n) with collapse evidence")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("selftest", help="check the golden tables")
    p.add_argument("--known-errata", action="store_true",
                   help="compare intersection counts against recomputed values instead of the published ones")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be at least 1")
    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        print(f"permsimple: invariant violated: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # PermSimpleError is a ValueError; both are bad input
        print(f"permsimple: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
