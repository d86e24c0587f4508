"""Command-line front end: ``atrails <subcommand> ...``.

Documents go to stdout unless ``-o`` is given.  Reports are tab-separated.
Errors print ``error<TAB>Kind<TAB>message`` on stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import harness, render
from .checkerboard import NotColorable, checkerboard_color, parity_precheck
from .composite import (CertifiedUnknot, Gluing, NotCertified, aligned_pi, certify_unknot, chain_gluings,
                        chain_with_systems, connected_sum, glue, triangular_composite_dichotomy)
from .constructions import (diagonal_system, rect_unknotted_atrail, shifted_system, triangular_atrail)
from .errors import AtrailError, BudgetExceeded, InvalidInput
from .grids import AltshulerParams, OneVertexParams, RectParams, altshuler, one_vertex_grid, rect_grid
from .io import Document, read, save
from .links import Unclassified, classify
from .transitions import DEFAULT_BUDGET, bits_of, enumerate_atrails, find_atrail, trace

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_NONE, EXIT_BUDGET = 0, 1, 2, 3, 4


def _pair(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two integers 'x,y', got {text!r}") from None
    return a, b


def _grid_spec(text):
    """``tri:v,r,m`` or ``rect:i,j``."""
    kind, _, rest = text.partition(":")
    try:
        nums = tuple(int(x) for x in rest.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}") from None
    if kind == "tri" and len(nums) == 3:
        return AltshulerParams(*nums)
    if kind == "rect" and len(nums) == 2:
        return RectParams(*nums)
    raise argparse.ArgumentTypeError(f"grid spec must be tri:v,r,m or rect:i,j, got {text!r}")


def _build(params):
    if isinstance(params, AltshulerParams):
        return altshuler(params)
    return rect_grid(params)


def _construct(params):
    if isinstance(params, AltshulerParams):
        return triangular_atrail(params)
    return rect_unknotted_atrail(params)


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tsv(*fields):
    print("\t".join(str(f) for f in fields))


# -- subcommands -------------------------------------------------------------


def cmd_gen(args):
    systems = {}
    composite = None
    wanted = set(args.system or ())
    if args.family == "tri":
        params = AltshulerParams(args.v, args.r, args.m)
        g = altshuler(params)
        if "construct" in wanted:
            systems["atrail"] = triangular_atrail(params)
    elif args.family == "rect":
        params = RectParams(args.i, args.j)
        g = rect_grid(params)
        if "construct" in wanted:
            systems["atrail"] = rect_unknotted_atrail(params)
        if "diagonal" in wanted:
            systems["diagonal"] = diagonal_system(args.i, args.j)
        if args.shift is not None:
            systems["shifted"] = shifted_system(args.i, args.j, *args.shift)
    elif args.family == "onevertex":
        g = one_vertex_grid(OneVertexParams(args.a, args.b))
    else:
        if not args.grid or len(args.grid) < 2:
            raise InvalidInput("composite needs at least two --grid specs")
        grids = [_build(p) for p in args.grid]
        if "construct" in wanted:
            built = None
            if all(isinstance(p, RectParams) for p in args.grid):
                built = chain_with_systems(grids, [_construct(p) for p in args.grid], "A")
            elif all(isinstance(p, AltshulerParams) for p in args.grid):
                composite = glue(grids, chain_gluings(grids, args.pi_shift))
                verdict = triangular_composite_dichotomy(composite)
                if hasattr(verdict, "witness"):
                    built = composite, verdict.witness
            else:
                raise InvalidInput("--system construct needs all-triangular or all-rectangular chains")
            if built is None:
                print("no compatible A-trail chain for these grids", file=sys.stderr)
                return EXIT_NONE
            composite, systems["atrail"] = built
        else:
            composite = glue(grids, chain_gluings(grids, args.pi_shift))
        g = composite.graph
    if "atrails" in wanted:
        for k, T in enumerate(enumerate_atrails(g, args.budget)):
            systems[f"atrail{k}"] = T
    _emit(save(Document(g, systems=systems, composite=composite)), args.output)
    return EXIT_OK


def cmd_color(args):
    doc = read(args.document)
    c = checkerboard_color(doc.graph)
    if isinstance(c, NotColorable):
        _tsv("not-colorable", ",".join(map(str, c.odd_cycle)))
        return EXIT_NONE
    doc.face_colors = c
    try:
        note = parity_precheck(doc.graph, c)
    except InvalidInput as exc:
        note = f"parity check skipped: {exc}"
    print(note, file=sys.stderr)
    _emit(save(doc), args.output)
    return EXIT_OK


def _verdict(doc, T):
    g = doc.graph
    if g.genus == 1:
        return classify(g, T)
    if doc.composite is None:
        return Unclassified(f"genus {g.genus} without component data")
    if len(trace(g, T)) != 1:
        return Unclassified(f"genus {g.genus} link with {len(trace(g, T))} components")
    cert = certify_unknot(doc.composite, T)
    return "Unknot" if isinstance(cert, CertifiedUnknot) else Unclassified(cert.reason)


def cmd_search(args):
    doc = read(args.document)
    g = doc.graph
    if args.all:
        found = enumerate_atrails(g, args.budget, args.mode, args.workers)
    else:
        T = find_atrail(g, args.mode, args.workers, args.budget)
        found = [] if T is None else [T]
    if not found:
        _tsv("NONE")
        return EXIT_NONE
    for k, T in enumerate(found):
        bits = "".join(map(str, bits_of(g, T)))
        _tsv("witness", k, bits, _verdict(doc, T))
        doc.systems[f"atrail{k}"] = T
    if args.output:
        _emit(save(doc), args.output)
    return EXIT_OK


def _system(doc, name):
    if name not in doc.systems:
        have = ", ".join(sorted(doc.systems)) or "none"
        raise InvalidInput(f"no transition system named {name!r} (document has: {have})")
    return doc.systems[name]


def cmd_classify(args):
    doc = read(args.document)
    print(_verdict(doc, _system(doc, args.system)))
    return EXIT_OK


def cmd_glue(args):
    docs = [read(p) for p in args.documents]
    grids = [d.graph for d in docs]
    if args.faces:
        if len(args.faces) != len(grids) - 1:
            raise InvalidInput(f"need {len(grids) - 1} --faces entries")
        gluings = [Gluing(f1, f2, aligned_pi(grids[k], f1, grids[k + 1], f2, args.pi_shift))
                   for k, (f1, f2) in enumerate(args.faces)]
    elif args.system:
        # pick faces where the named systems fit together, preferring type A patterns
        comps = [_system(d, args.system) for d in docs]
        built = chain_with_systems(grids, comps, "A") or chain_with_systems(grids, comps, None)
        if built is None:
            print("no compatible face pairs for these systems", file=sys.stderr)
            return EXIT_NONE
        cg, T = built
        _emit(save(Document(cg.graph, systems={args.system: T}, composite=cg)), args.output)
        return EXIT_OK
    else:
        gluings = chain_gluings(grids, args.pi_shift)
    cg = glue(grids, gluings)
    systems = {}
    if args.system:
        systems[args.system] = connected_sum(cg, [_system(d, args.system) for d in docs])
    _emit(save(Document(cg.graph, systems=systems, composite=cg)), args.output)
    return EXIT_OK


def cmd_certify(args):
    doc = read(args.document)
    T = _system(doc, args.system)
    if doc.composite is not None:
        cert = certify_unknot(doc.composite, T)
    else:
        v = classify(doc.graph, T)
        ok = len(trace(doc.graph, T)) == 1 and str(v) == "Unknot"
        cert = CertifiedUnknot() if ok else NotCertified(f"verdict {v}")
    print(cert)
    return EXIT_OK if isinstance(cert, CertifiedUnknot) else EXIT_NONE


def cmd_render(args):
    doc = read(args.document)
    T = _system(doc, args.system) if args.system else None
    title = args.title or ""
    if doc.composite is not None:
        svg = render.render_composite(doc.composite, T, title)
    else:
        svg = render.render_graph(doc.graph, T, title)
    _emit(svg, args.output)
    return EXIT_OK


def reference_figures(directory):
    """Write the standard drawings and return their file names."""
    os.makedirs(directory, exist_ok=True)
    out = []

    def put(name, svg):
        render.save_svg(os.path.join(directory, name), svg)
        out.append(name)

    tri = AltshulerParams(81, 9, 6)
    put("triangular_81_9_6.svg", render.render_graph(altshuler(tri), triangular_atrail(tri), "T_6^{81,9}"))
    put("rect_7_4_diagonal.svg", render.render_graph(rect_grid(RectParams(7, 4)), diagonal_system(7, 4),
                                                     "R_{7,4} diagonal"))
    put("rect_8_6_unknot.svg", render.render_graph(rect_grid(RectParams(8, 6)),
                                                   rect_unknotted_atrail(RectParams(8, 6)), "R_{8,6}"))
    put("shifted_9_8_5_4.svg", render.render_graph(rect_grid(RectParams(9, 8)), shifted_system(9, 8, 5, 4),
                                                   "R_{9,8} shifted"))
    fig8 = harness.figure_eight_document()
    put("figure_eight_composite.svg", render.render_composite(fig8.composite, fig8.systems["atrail"],
                                                              "genus 2, not certified"))
    ps = [RectParams(3, 5), RectParams(4, 4), RectParams(4, 6)]
    cg, T = chain_with_systems([rect_grid(p) for p in ps], [rect_unknotted_atrail(p) for p in ps], "A")
    put("sa_chain_genus3.svg", render.render_composite(cg, T, "genus 3 chain"))
    return out


def cmd_verify(args):
    results = harness.run_suites(args.max_v, args.seed, args.inject_fault, args.only, args.workers)
    rows = [("suite", "status", "seconds", "detail")]
    rows += [(r.name, "pass" if r.passed else "FAIL", f"{r.seconds:.2f}", r.detail) for r in results]
    for row in rows:
        _tsv(*row)
    if args.figures:
        with open(os.path.join(_mkdir(args.figures), "report.tsv"), "w", encoding="utf-8") as fh:
            fh.writelines("\t".join(row) + "\n" for row in rows)
        for name in reference_figures(args.figures):
            print(f"wrote {os.path.join(args.figures, name)}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _mkdir(path):
    os.makedirs(path, exist_ok=True)
    return path


# -- parser ------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="atrails", description="A-trails on torus and composite grids")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a grid document")
    gen.add_argument("family", choices=("tri", "rect", "onevertex", "composite"))
    gen.add_argument("--v", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--m", type=int)
    gen.add_argument("--i", type=int)
    gen.add_argument("--j", type=int)
    gen.add_argument("--a", type=_pair, default=(1, 0), help="class of the first loop, 'p,q'")
    gen.add_argument("--b", type=_pair, default=(0, 1), help="class of the second loop, 'p,q'")
    gen.add_argument("--grid", type=_grid_spec, action="append",
                     help="composite component, tri:v,r,m or rect:i,j (repeat in chain order)")
    gen.add_argument("--pi-shift", type=int, default=0, help="rotation of the face identifications")
    gen.add_argument("--shift", type=int, nargs=2, metavar=("M", "N"),
                     help="rect: add the shifted system with left band M and bottom band N")
    gen.add_argument("--system", action="append", choices=("construct", "diagonal", "atrails"),
                     help="attach named transition systems")
    gen.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    color = sub.add_parser("color", help="checkerboard-color the faces")
    color.add_argument("document")
    color.add_argument("-o", "--output")
    color.set_defaults(func=cmd_color)

    search = sub.add_parser("search", help="search for A-trails")
    search.add_argument("document")
    search.add_argument("--mode", choices=("exhaustive", "backtracking"), default="backtracking")
    search.add_argument("--all", action="store_true", help="list every A-trail")
    search.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="cap on systems tried (exhaustive, --all) or search nodes (backtracking)")
    search.add_argument("--workers", type=int, default=1)
    search.add_argument("-o", "--output", help="write the document with the witnesses attached")
    search.set_defaults(func=cmd_search)

    cl = sub.add_parser("classify", help="verdict for a named transition system")
    cl.add_argument("document")
    cl.add_argument("--system", required=True)
    cl.set_defaults(func=cmd_classify)

    gl = sub.add_parser("glue", help="glue torus documents into a chain")
    gl.add_argument("documents", nargs="+")
    gl.add_argument("--faces", type=_pair, action="append",
                    help="'f1,f2' per gluing, in chain order (default: first faces that fit)")
    gl.add_argument("--pi-shift", type=int, default=0)
    gl.add_argument("--system", help="connected sum of the systems of this name in every component")
    gl.add_argument("-o", "--output")
    gl.set_defaults(func=cmd_glue)

    cert = sub.add_parser("certify", help="certify that an A-trail is unknotted")
    cert.add_argument("document")
    cert.add_argument("--system", required=True)
    cert.set_defaults(func=cmd_certify)

    rd = sub.add_parser("render", help="draw the fundamental polygon(s) as SVG")
    rd.add_argument("document")
    rd.add_argument("--system")
    rd.add_argument("--title")
    rd.add_argument("-o", "--output")
    rd.set_defaults(func=cmd_render)

    vt = sub.add_parser("verify-theorems", help="run every property suite")
    vt.add_argument("--max-v", type=int, default=12)
    vt.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    vt.add_argument("--workers", type=int, default=1)
    vt.add_argument("--only", action="append", choices=[name for name, _ in harness.SUITES])
    vt.add_argument("--inject-fault", choices=harness.FAULTS)
    vt.add_argument("--figures", metavar="DIR", help="also write report.tsv and reference SVGs here")
    vt.set_defaults(func=cmd_verify)
    return p


def _params_check(args):
    need = {"tri": ("v", "r", "m"), "rect": ("i", "j")}.get(getattr(args, "family", None), ())
    missing = [f"--{k}" for k in need if getattr(args, k) is None]
    if missing:
        raise InvalidInput(f"{args.family} needs {' '.join(missing)}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            _params_check(args)
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error\tBudgetExceeded\t{exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInput, OSError) as exc:
        print(f"error\t{type(exc).__name__}\t{exc}", file=sys.stderr)
        return EXIT_INVALID
    except AtrailError as exc:
        print(f"error\t{type(exc).__name__}\t{exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
