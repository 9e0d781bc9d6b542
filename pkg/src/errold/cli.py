"""Command-line front end.

Reports are stable line-oriented "key: value" text on stdout, one key per
line, including a sha256 digest of every input file consumed.  Exit codes:
0 = ok, 1 = valid input with a negative answer, 2 = bad input, resource
limits, or unknown commands (argparse prints usage to stderr for the
latter)."""

from __future__ import annotations

import argparse
import hashlib
import sys

from .graph import Graph, GraphError, ParseError, parse_edge_list, serialize_edge_list
from .detection import (kind_from_flag, verify, exists_err_old,
                        parse_detector_set)
from .solver import minimum_detector_set, SearchBudgetExceeded
from .extremal import (enumerate_graphs, quasi_cubic_expand, supports_err_old,
                       ResourceLimit as ExtremalLimit)
from . import reduction
from . import grids


class Report:
    def __init__(self, command: str):
        self.lines: list[tuple[str, str]] = [("command", command)]
        self.tail: list[str] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def digest(self, name: str, path: str) -> None:
        with open(path, "rb") as fh:
            h = hashlib.sha256(fh.read()).hexdigest()
        self.add(f"digest-{name}", f"sha256:{h}")

    def section(self, text: str) -> None:
        self.tail.append(text)

    def emit(self, status: str) -> None:
        self.add("status", status)
        for key, value in self.lines:
            print(f"{key}: {value}")
        for text in self.tail:
            print(text, end="" if text.endswith("\n") else "\n")


def _load_graph(report: Report, path: str) -> Graph:
    report.digest("graph", path)
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def _load_cnf(report: Report, path: str) -> reduction.CnfFormula:
    report.digest("cnf", path)
    with open(path, "r", encoding="utf-8") as fh:
        return reduction.parse_dimacs_cnf(fh.read())


def _load_pattern(report: Report, path: str) -> grids.PeriodicPattern:
    report.digest("pattern", path)
    with open(path, "r", encoding="utf-8") as fh:
        return grids.parse_pattern(fh.read())


def cmd_verify(args) -> int:
    report = Report("verify")
    g = _load_graph(report, args.graph)
    report.digest("set", args.set)
    with open(args.set, "r", encoding="utf-8") as fh:
        detectors = parse_detector_set(fh.read(), g)
    kind = kind_from_flag(args.kind)
    verdict = verify(g, detectors, kind, strategy=args.strategy)
    report.add("kind", kind)
    report.add("pass", str(verdict.ok).lower())
    if not verdict.ok:
        if verdict.vertex is not None:
            report.add("witness-vertex", verdict.vertex)
            report.add("witness-domination", verdict.value)
        else:
            report.add("witness-pair", f"{verdict.pair[0]} {verdict.pair[1]}")
            report.add("witness-value", verdict.value)
    report.emit("ok" if verdict.ok else "fail")
    return 0 if verdict.ok else 1


def cmd_exists(args) -> int:
    report = Report("exists")
    g = _load_graph(report, args.graph)
    res = exists_err_old(g)
    report.add("exists", str(res.exists).lower())
    if not res.exists:
        if res.low_degree_vertex is not None:
            report.add("witness-vertex", res.low_degree_vertex)
            report.add("witness-degree", g.degree(res.low_degree_vertex))
        else:
            report.add("witness-cycle", " ".join(str(v) for v in res.cycle))
            report.add("witness-pair", f"{res.pair[0]} {res.pair[1]}")
            report.add("witness-value", res.value)
    report.emit("ok" if res.exists else "fail")
    return 0 if res.exists else 1


def cmd_solve(args) -> int:
    report = Report("solve")
    g = _load_graph(report, args.graph)
    kind = kind_from_flag(args.kind)
    res = minimum_detector_set(g, kind, strategy=args.strategy,
                               budget=args.budget, jobs=args.jobs)
    report.add("kind", kind)
    report.add("result", res.status)
    if res.status == "optimal":
        report.add("optimum", res.optimum)
        report.add("witness", " ".join(str(v) for v in sorted(res.witness)))
    report.add("nodes-explored", res.nodes_explored)
    report.emit("ok" if res.status == "optimal" else "fail")
    return 0 if res.status == "optimal" else 1


def cmd_decide(args) -> int:
    report = Report("decide")
    g = _load_graph(report, args.graph)
    kind = kind_from_flag(args.kind)
    res = minimum_detector_set(g, kind, jobs=args.jobs)
    answer = res.status == "optimal" and res.optimum <= args.k
    report.add("kind", kind)
    report.add("k", args.k)
    if res.status == "optimal":
        report.add("optimum", res.optimum)
    else:
        report.add("result", "infeasible")
    report.add("answer", str(answer).lower())
    report.emit("ok" if answer else "fail")
    return 0 if answer else 1


def cmd_enumerate(args) -> int:
    report = Report("enumerate")
    predicate = supports_err_old if args.predicate == "err" else None
    found = enumerate_graphs(args.n, args.m, predicate=predicate,
                             min_degree=args.min_degree, jobs=args.jobs)
    report.add("n", args.n)
    if args.m is not None:
        report.add("m", args.m)
    report.add("count", len(found))
    for cg in found:
        report.add("graph", cg.manifest_line())
    if args.out:
        import os
        os.makedirs(args.out, exist_ok=True)
        manifest_path = os.path.join(args.out, "manifest.txt")
        with open(manifest_path, "w", encoding="utf-8") as mh:
            for cg in found:
                mh.write(cg.manifest_line() + "\n")
                gpath = os.path.join(args.out, f"graph_{cg.hex}.el")
                with open(gpath, "w", encoding="utf-8") as gh:
                    gh.write(serialize_edge_list(cg.graph))
        report.add("out-dir", args.out)
    report.emit("ok")
    return 0


def cmd_expand(args) -> int:
    report = Report("expand")
    g = _load_graph(report, args.graph)
    expanded = quasi_cubic_expand(g, tuple(args.e1), tuple(args.e2))
    report.add("n", expanded.n)
    report.add("m", expanded.m)
    report.add("quasi-cubic", str(expanded.degree_summary()[3]).lower())
    report.add("exists-err-old", str(exists_err_old(expanded).exists).lower())
    report.section("## graph\n" + serialize_edge_list(expanded))
    report.emit("ok")
    return 0


def cmd_reduce(args) -> int:
    report = Report("reduce")
    formula = _load_cnf(report, args.cnf)
    inst = reduction.build_instance(formula)
    report.add("variables", formula.num_variables)
    report.add("clauses", formula.num_clauses)
    report.add("vertices", inst.graph.n)
    report.add("edges", inst.graph.m)
    report.add("K", inst.k)
    graph_text = serialize_edge_list(inst.graph)
    manifest_text = inst.manifest()
    if args.out_graph:
        with open(args.out_graph, "w", encoding="utf-8") as fh:
            fh.write(graph_text)
        report.add("graph-file", args.out_graph)
    if args.out_manifest:
        with open(args.out_manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest_text)
        report.add("manifest-file", args.out_manifest)
    if not args.out_graph:
        report.section("## graph\n" + graph_text)
    if not args.out_manifest:
        report.section("## manifest\n" + manifest_text)
    report.emit("ok")
    return 0


def cmd_gadget_check(args) -> int:
    report = Report("gadget-check")
    formula = _load_cnf(report, args.cnf)
    inst = reduction.build_instance(formula)
    check = reduction.validate_gadgets(inst)
    report.add("forced-count", len(inst.forced))
    report.add("pass", str(check.ok).lower())
    for i, defect in enumerate(check.defects, start=1):
        report.add(f"defect-{i}", defect)
    report.emit("ok" if check.ok else "fail")
    return 0 if check.ok else 1


def cmd_roundtrip(args) -> int:
    report = Report("roundtrip")
    formula = _load_cnf(report, args.cnf)
    sat, _ = reduction.sat_brute_force(formula)
    inst = reduction.build_instance(formula)
    found = reduction.find_detector_set_within_budget(inst, jobs=args.jobs)
    equivalent = sat == (found is not None)
    report.add("satisfiable", str(sat).lower())
    report.add("detector-set-within-budget", str(found is not None).lower())
    report.add("K", inst.k)
    report.add("equivalent", str(equivalent).lower())
    report.emit("ok" if equivalent else "fail")
    return 0 if equivalent else 1


def cmd_grid_certify(args) -> int:
    report = Report("grid-certify")
    pat = _load_pattern(report, args.pattern)
    cert = grids.certify_pattern(pat)
    report.add("grid", pat.kind.name)
    report.add("index", pat.index)
    report.add("density", grids.pattern_density(pat))
    report.add("pass", str(cert.ok).lower())
    if not cert.ok:
        report.add("failing-class", f"{cert.failing_class[0]} {cert.failing_class[1]}")
        if cert.failing_displacement is not None:
            report.add("failing-displacement",
                       f"{cert.failing_displacement[0]} {cert.failing_displacement[1]}")
        report.add("value", cert.value)
    report.emit("ok" if cert.ok else "fail")
    return 0 if cert.ok else 1


def cmd_grid_search(args) -> int:
    report = Report("grid-search")
    kind = grids.GRID_KINDS[args.grid]
    best = grids.search_patterns(kind, args.max_index, jobs=args.jobs)
    report.add("grid", kind.name)
    report.add("max-index", args.max_index)
    if best is None:
        report.add("found", "false")
        report.emit("fail")
        return 1
    report.add("found", "true")
    report.add("density", grids.pattern_density(best))
    report.add("index", best.index)
    report.section("## pattern\n" + grids.serialize_pattern(best))
    report.emit("ok")
    return 0


def cmd_grid_share(args) -> int:
    report = Report("grid-share")
    pat = _load_pattern(report, args.pattern)
    report.add("grid", pat.kind.name)
    report.add("index", pat.index)
    report.add("density", grids.pattern_density(pat))
    report.add("max-share", grids.max_share(pat))
    report.add("share-sum", grids.share_sum(pat))
    report.emit("ok")
    return 0


def cmd_render(args) -> int:
    report = Report("render")
    pat = _load_pattern(report, args.pattern)
    report.add("grid", pat.kind.name)
    report.add("window", args.window)
    report.section("figure:\n" + grids.render_pattern(pat, args.window))
    report.emit("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="errold",
        description="Detection systems on graphs: verification, existence, "
                    "exact optimisation, enumeration, hardness reduction, and "
                    "infinite-grid patterns for error-correcting "
                    "open-locating-dominating sets.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def graph_flag(p):
        p.add_argument("--graph", required=True, help="edge-list file")

    def jobs_flag(p):
        p.add_argument("--jobs", type=int, default=1, help="worker count (default 1)")

    p = sub.add_parser("verify", help="check a detector set")
    graph_flag(p)
    p.add_argument("--set", required=True, help="detector-set file")
    p.add_argument("--kind", required=True, choices=["old", "redold", "detold", "err"])
    p.add_argument("--strategy", choices=["pruned", "naive"], default="pruned")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exists", help="ERR:OLD existence test")
    graph_flag(p)
    p.set_defaults(func=cmd_exists)

    p = sub.add_parser("solve", help="minimum detector set")
    graph_flag(p)
    p.add_argument("--kind", required=True, choices=["old", "redold", "detold", "err"])
    p.add_argument("--strategy", choices=["branch-and-bound", "exhaustive"],
                   default="branch-and-bound")
    p.add_argument("--budget", type=int, default=None, help="node limit")
    jobs_flag(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("decide", help="is there a detector set of size <= k")
    graph_flag(p)
    p.add_argument("--kind", required=True, choices=["old", "redold", "detold", "err"])
    p.add_argument("--k", type=int, required=True)
    jobs_flag(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("enumerate", help="non-isomorphic graphs, optionally filtered")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--predicate", choices=["err", "all"], default="err")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--out", default=None, help="directory for edge-list files + manifest")
    jobs_flag(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("expand", help="quasi-cubic expansion of a cubic graph")
    graph_flag(p)
    p.add_argument("--e1", type=int, nargs=2, required=True, metavar=("U", "V"))
    p.add_argument("--e2", type=int, nargs=2, required=True, metavar=("U", "V"))
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("reduce", help="compile 3-SAT into a decision instance")
    p.add_argument("--cnf", required=True, help="DIMACS CNF file")
    p.add_argument("--out-graph", default=None)
    p.add_argument("--out-manifest", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gadget-check", help="validate the gadget guarantees")
    p.add_argument("--cnf", required=True)
    p.set_defaults(func=cmd_gadget_check)

    p = sub.add_parser("roundtrip", help="SAT vs budgeted detector-set equivalence")
    p.add_argument("--cnf", required=True)
    jobs_flag(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("grid-certify", help="certify a periodic pattern")
    p.add_argument("--pattern", required=True, help="pattern file")
    p.set_defaults(func=cmd_grid_certify)

    p = sub.add_parser("grid-search", help="minimum-density certified pattern")
    p.add_argument("--grid", required=True, choices=["SQR", "TRI", "KNG"])
    p.add_argument("--max-index", type=int, required=True)
    jobs_flag(p)
    p.set_defaults(func=cmd_grid_search)

    p = sub.add_parser("grid-share", help="share diagnostics of a certified pattern")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_grid_share)

    p = sub.add_parser("render", help="character-grid rendering of a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--window", type=int, required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ParseError, GraphError, ValueError,
            ExtremalLimit, reduction.ResourceLimit, grids.PatternError) as exc:
        print(f"command: {args.cmd}")
        print(f"error: {exc}")
        print("status: error")
        return 2
    except SearchBudgetExceeded as exc:
        print(f"command: {args.cmd}")
        print(f"error: {exc}")
        print(f"nodes-explored: {exc.nodes_explored}")
        if exc.best_size is not None:
            print(f"best-size: {exc.best_size}")
            print("best-set: " + " ".join(str(v) for v in sorted(exc.best_set)))
        print("status: error")
        return 2


def console_main() -> None:
    sys.exit(main())
