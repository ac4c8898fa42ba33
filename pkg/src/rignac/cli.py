"""Machine-first command line: JSON on stdout, logs on stderr.

Exit codes: 0 success or affirmative answer, 1 clean negative answer,
2 usage or input error, 3 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import catalog as cat
from . import colouring as col
from . import constructions as cons
from . import stable_cut as sc
from .graph import (
    Graph,
    GraphParseError,
    PreconditionError,
    blocks,
    connected_components,
    emit_edge_list,
    emit_graph6,
    is_connected,
    parse_edge_list,
    parse_graph,
    parse_graph6,
)
from .rigidity import (
    GscDecomposition,
    is_2tree,
    rank,
    recognize_gsc,
    rigidity_report,
    rigidly_related_pairs,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def _read_input(args) -> str:
    if args.file and args.file != "-":
        with open(args.file, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _load_graph(args) -> Graph:
    text = _read_input(args)
    fmt = getattr(args, "format", "auto")
    if fmt == "edgelist":
        g, labels = parse_edge_list(text)
        if labels != [str(i) for i in range(len(labels))]:
            print(f"label map: {dict(enumerate(labels))}", file=sys.stderr)
        return g
    if fmt == "graph6":
        return parse_graph6(text)
    return parse_graph(text)


def _emit(obj, args) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, sort_keys=True)
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _workers(args) -> int:
    t = getattr(args, "threads", None)
    return t if t else col.default_workers()


def _stable_cut_payload(g: Graph, result: Optional[sc.StableCutResult], method: Optional[str]) -> dict:
    if result is None:
        return {"cut": None, "method": method}
    comps = col.connected_components_without(g, result.cut)
    return {
        "cut": sorted(result.cut),
        "separates": list(result.separated_pair) if result.separated_pair else None,
        "avoids": result.avoided_vertex,
        "components_after_removal": len(comps),
        "method": method,
    }


def _find_stable_cut(g: Graph) -> tuple[Optional[sc.StableCutResult], Optional[str]]:
    """Neighbourhood heuristic, then the contraction algorithm, then exhaustive."""
    from .graph import is_cut, is_stable_set

    for u in range(g.n):
        nbrs = g.adjacency[u]
        if is_stable_set(g, nbrs) and is_cut(g, nbrs):
            return sc.StableCutResult(cut=frozenset(nbrs)), "neighbourhood"
    if g.n >= 2 and is_connected(g):
        report = rigidity_report(g)
        if report.is_flexible:
            related = rigidly_related_pairs(g)
            for u in range(g.n):
                for v in range(u + 1, g.n):
                    if (u, v) not in related:
                        return sc.algorithm1_stable_cut(g, u, v), "algorithm1"
    if g.n <= sc.EXHAUSTIVE_MAX_VERTICES:
        return sc.exhaustive_stable_cut(g), "exhaustive"
    return None, "skipped"


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    report = {"n": g.n, "m": g.m, "connected": is_connected(g)}
    report["blocks"] = len(blocks(g)) if all(g.adjacency[v] for v in range(g.n)) else None
    rig = rigidity_report(g)
    report.update(
        rank=rig.rank,
        rigid=rig.is_rigid,
        minimally_rigid=rig.is_minimally_rigid,
        flexible=rig.is_flexible,
        rigid_components=len(rig.rigid_components),
        two_tree=is_2tree(g),
    )
    if g.m == 2 * g.n - 3 and is_connected(g):
        dec = recognize_gsc(g)
        if isinstance(dec, GscDecomposition):
            report["gsc"] = {"member": True, "prisms": dec.prism_count}
        else:
            report["gsc"] = {"member": False, "reason": dec.reason}
    else:
        report["gsc"] = {"member": False, "reason": "edge count"}
    cut, method = _find_stable_cut(g)
    payload = _stable_cut_payload(g, cut, method)
    report["stable_cut"] = payload["cut"]
    report["stable_cut_method"] = method
    if args.count:
        report["nnac"] = str(col.enumerate_nac(g, workers=_workers(args)))
    _emit(report, args)
    return EXIT_OK


def cmd_rank(args) -> int:
    g = _load_graph(args)
    _emit({"rank": rank(g), "max_rank": 2 * g.n - 3}, args)
    return EXIT_OK


def cmd_components(args) -> int:
    g = _load_graph(args)
    _emit({"components": [sorted(c) for c in connected_components(g)]}, args)
    return EXIT_OK


def cmd_nac(args) -> int:
    g = _load_graph(args)
    workers = _workers(args)
    if args.action == "count":
        count, nodes, ms = col.enumerate_nac_detailed(g, workers=workers)
        if args.raw:
            _emit(str(count), args)
        else:
            _emit({"nnac": str(count), "nodes": nodes, "millis": int(ms)}, args)
        return EXIT_OK
    if args.action == "exists":
        count = col.enumerate_nac(g, first_only=True)
        _emit("true" if count else "false", args)
        return EXIT_OK if count else EXIT_NEGATIVE
    if args.action == "list":
        lines: list[str] = []
        col.enumerate_nac(g, on_found=lambda c: lines.append(json.dumps(c.to_json())), workers=workers)
        _emit("\n".join(lines) if lines else "", args)
        return EXIT_OK
    # construct
    result = col.construct_nac_minimally_rigid(g)
    if isinstance(result, col.TwoTreeCertificate):
        _emit({"nac": None, "two_tree_peel": list(result.peel_order)}, args)
        return EXIT_NEGATIVE
    _emit(result.to_json(), args)
    return EXIT_OK


def cmd_nap(args) -> int:
    g = _load_graph(args)
    found: list[col.EdgeColouring] = []

    def keep(c: col.EdgeColouring) -> None:
        if col.is_nap(g, c):
            found.append(c)

    # every NAP-colouring is a NAC-colouring, so filtering the NAC stream is complete
    col.enumerate_nac(g, on_found=keep)
    if args.action == "exists":
        _emit("true" if found else "false", args)
        return EXIT_OK if found else EXIT_NEGATIVE
    _emit("\n".join(json.dumps(c.to_json()) for c in found), args)
    return EXIT_OK


def cmd_stable_cut(args) -> int:
    g = _load_graph(args)
    if args.separate:
        u, v = args.separate
        result = sc.algorithm1_stable_cut(g, u, v)
        _emit(_stable_cut_payload(g, result, "algorithm1"), args)
        return EXIT_OK
    if args.avoid is not None:
        result = sc.stable_cut_avoiding(g, args.avoid)
        _emit(_stable_cut_payload(g, result, "algorithm1"), args)
        return EXIT_OK
    if args.exhaustive:
        result = sc.exhaustive_stable_cut(g)
        _emit(_stable_cut_payload(g, result, "exhaustive"), args)
        return EXIT_OK if result else EXIT_NEGATIVE
    result, method = _find_stable_cut(g)
    _emit(_stable_cut_payload(g, result, method), args)
    return EXIT_OK if result else EXIT_NEGATIVE


def cmd_construct(args) -> int:
    family = args.family
    p = args.params
    try:
        if family == "path":
            g = cons.make_path(int(p[0]))
        elif family == "cycle":
            g = cons.make_cycle(int(p[0]))
        elif family == "complete":
            g = cons.make_complete(int(p[0]))
        elif family == "complete-bipartite":
            g = cons.make_complete_bipartite(int(p[0]), int(p[1]))
        elif family == "gk":
            g, _ = cons.make_gk(int(p[0]))
        elif family == "two-tree":
            g = cons.make_2tree(int(p[0]), int(p[1]))
        elif family == "wheel":
            g = cons.make_wheel(int(p[0]))
        elif family == "gsc":
            g = cons.make_gsc(json.loads(p[0]))
        elif family == "fixture":
            g = cons.fixtures()[p[0]].graph
        else:
            print(f"unknown family {family!r}", file=sys.stderr)
            return EXIT_USAGE
    except (IndexError, KeyError, ValueError) as exc:
        print(f"bad construct parameters: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(emit_graph6(g) if args.emit == "graph6" else emit_edge_list(g), args)
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = cat.enumerate_minimally_rigid(
        args.n, allow_large=args.allow_large, workers=_workers(args)
    )
    if args.out:
        cat.save_catalog(entries, args.n, args.out)
        print(f"wrote {len(entries)} entries", file=sys.stderr)
    if args.histogram:
        _emit(cat.histogram_report(args.n, entries=entries), args)
    if args.check_conjecture:
        main_v = cat.check_conjecture_61(entries)
        alt_v = cat.check_conjecture_61(entries, prism_subgraph_reading=True)
        _emit(
            {
                "n": args.n,
                "violations_construction_reading": main_v,
                "violations_subgraph_reading": alt_v,
            },
            args,
        )
        return EXIT_OK if not main_v else EXIT_NEGATIVE
    if not args.out and not args.histogram:
        _emit({"n": args.n, "classes": [e.graph6 for e in entries]}, args)
    return EXIT_OK


def _selftest_rows() -> list[tuple[str, object, object]]:
    fx = cons.fixtures()
    prism, k33 = fx["prism"].graph, fx["k33"].graph
    rows: list[tuple[str, object, object]] = []
    rows.append(("prism-nac-count", 1, col.enumerate_nac(prism)))
    rows.append(("k33-nac-count", 15, col.enumerate_nac(k33)))
    rows.append(("prism-rigid", True, rigidity_report(prism).is_rigid))
    rows.append(("k33-rigid", True, rigidity_report(k33).is_rigid))
    rows.append(("path8-count", 2 ** 6 - 1, col.enumerate_nac(cons.make_path(8))))
    rows.append(("cycle8-count", 2 ** 7 - 9, col.enumerate_nac(cons.make_cycle(8))))
    rows.append(("k23-count", 7, col.enumerate_nac(cons.make_complete_bipartite(2, 3))))
    gk2, _ = cons.make_gk(2)
    rows.append(("gk2-count", 3, col.enumerate_nac(gk2)))
    rows.append(("two-triangles-blocks", 1, col.count_nac(_two_triangles())))
    rows.append(("upper-bound-n6", 35, col.nnac_upper_bound(6)))
    rows.append(("prism-gsc-prisms", 1, recognize_gsc(prism).prism_count))
    entries6 = cat.enumerate_minimally_rigid(6)
    rows.append(("catalog-n6-classes", 13, len(entries6)))
    rows.append(("conjecture-n6-violations", 0, len(cat.check_conjecture_61(entries6))))
    return rows


def _two_triangles() -> Graph:
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def cmd_selftest(args) -> int:
    rows = _selftest_rows()
    ok = True
    for name, want, got in rows:
        status = "PASS" if want == got else "FAIL"
        ok &= want == got
        print(f"{status}  {name:32s} expected={want!r} got={got!r}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="rignac", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_io(p, with_threads=False):
        p.add_argument("--file", default="-", help="input path or - for stdin")
        p.add_argument("--format", choices=["auto", "edgelist", "graph6"], default="auto")
        p.add_argument("--out", default=None, help="write output to a file")
        if with_threads:
            p.add_argument("--threads", type=int, default=None, help="worker count (default: RIGNAC_THREADS or cores)")

    p = sub.add_parser("analyze", help="one-object JSON report")
    add_io(p, with_threads=True)
    p.add_argument("--count", action="store_true", help="include the exponential colouring count")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rank", help="sparsity rank")
    add_io(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("components", help="connected components")
    add_io(p)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("nac", help="NAC-colouring operations")
    p.add_argument("action", choices=["count", "list", "exists", "construct"])
    add_io(p, with_threads=True)
    p.add_argument("--raw", action="store_true", help="bare decimal count")
    p.set_defaults(func=cmd_nac)

    p = sub.add_parser("nap", help="NAP-colouring operations")
    p.add_argument("action", choices=["list", "exists"])
    add_io(p)
    p.set_defaults(func=cmd_nap)

    p = sub.add_parser("stable-cut", help="stable cut search")
    add_io(p)
    p.add_argument("--separate", nargs=2, type=int, metavar=("U", "V"))
    p.add_argument("--avoid", type=int, default=None, metavar="V")
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_stable_cut)

    p = sub.add_parser("construct", help="emit a named family graph")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--emit", choices=["edgelist", "graph6"], default="edgelist")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("catalog", help="minimally rigid catalogs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--histogram", action="store_true")
    p.add_argument("--check-conjecture", action="store_true")
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("selftest", help="quick pass/fail table of known values")
    p.set_defaults(func=cmd_selftest)
    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
