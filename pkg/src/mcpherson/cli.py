"""Command-line front end: ``mcpherson {compute,gen,jaco-table,conjecture,scan}``."""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import engine
from .engine import (
    PolicyViolation,
    SolverLimitError,
    TieBreakPolicy,
    exact_upsilon,
    exact_upsilon_star,
    greedy_mcpherson,
)
from .families import (
    FamilyError,
    FamilySpec,
    closed_form_upsilon,
    conjecture_scan,
    generate,
    jaco_table,
)
from .graph import EdgeListParseError, format_edge_list, parse_edge_list

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_LIMIT = 4
EXIT_POLICY = 5

MAX_ALL_N = 7


class UsageError(Exception):
    pass


def _arcs(arcs) -> list[list[int]]:
    return [list(a) for a in sorted(arcs)]


def _trace_json(trace) -> list[dict]:
    return [{"vertex": s.vertex, "arcs": _arcs(s.arcs_added)} for s in trace.steps]


def _emit(report: dict, fmt: str, text_lines: list[str], out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=False) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def _solver_limit(args) -> int:
    return args.solver_limit if args.solver_limit is not None else engine.clique_limit()


def cmd_compute(args, out) -> int:
    if args.file == "-":
        text, name = sys.stdin.read(), "<stdin>"
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        name = os.path.basename(args.file)
    G = parse_edge_list(text)
    policy = TieBreakPolicy.parse(args.policy)
    trace = greedy_mcpherson(G, policy)

    report: dict = {"command": "compute", "input": name}
    summary: dict = {"n": G.n, "edges": G.size, "policy": policy.label,
                     "greedy_length": len(trace)}
    lines = [f"input: {name}", f"n: {G.n}", f"edges: {G.size}"]
    if not args.greedy_only:
        cert = exact_upsilon(G, _solver_limit(args))
        report["upsilon"] = cert.value
        lines.append(f"upsilon: {cert.value}")
        if G.n <= args.sequence_limit:
            star = exact_upsilon_star(G, args.sequence_limit).value
            report["upsilon_star"] = star
            report["discrepancy"] = star - cert.value
            report["stable"] = star == cert.value
            lines += [f"upsilon_star: {star}", f"discrepancy: {star - cert.value}",
                      f"stable: {str(star == cert.value).lower()}"]
        else:
            summary["upsilon_star_skipped"] = f"n={G.n} exceeds sequence limit {args.sequence_limit}"
            lines.append(f"upsilon_star: skipped ({summary['upsilon_star_skipped']})")
        report["witness"] = sorted(cert.witness_set)
        summary["mcpherson_graph"] = _arcs(cert.trace.arcs)
        lines.append("witness: " + " ".join(map(str, sorted(cert.witness_set))))
    report["trace"] = _trace_json(trace)
    lines.append(f"greedy ({policy.label}): {len(trace)} explosions")
    for k, step in enumerate(trace.steps, start=1):
        arcs = " ".join(f"({u},{v})" for u, v in sorted(step.arcs_added))
        lines.append(f"  {k}. v{step.vertex}: {arcs}")
    if "mcpherson_graph" in summary:
        lines.append("mcpherson graph: " + " ".join(
            f"({u},{v})" for u, v in summary["mcpherson_graph"]))
    report["summary"] = summary
    _emit(report, args.format, lines, out)
    return EXIT_OK


def _family_from_args(kind: str, params: list[str]) -> FamilySpec:
    kind = kind.lower()
    if kind in ("union", "join"):
        if not params:
            raise FamilyError(f"{kind} needs component specs like path:3")
        children = [FamilySpec.parse(p) for p in params]
        return FamilySpec.union(*children) if kind == "union" else FamilySpec.join(*children)
    return FamilySpec.parse(f"{kind}:{','.join(params)}")


def cmd_gen(args, out) -> int:
    spec = _family_from_args(args.family, args.params)
    G = generate(spec)
    if args.format == "json":
        report: dict = {"command": "gen", "input": str(spec)}
        summary: dict = {"n": G.n, "edges": [list(e) for e in G.sorted_edges()]}
        if args.upsilon:
            summary["upsilon_formula"] = closed_form_upsilon(spec)
            if G.n <= _solver_limit(args):
                report["upsilon"] = exact_upsilon(G).value
        report["summary"] = summary
        _emit(report, "json", [], out)
        return EXIT_OK
    out.write(format_edge_list(G))
    if args.upsilon:
        formula = closed_form_upsilon(spec)
        out.write(f"# family: {spec}\n")
        out.write(f"# upsilon formula: {'none' if formula is None else formula}\n")
        if G.n <= _solver_limit(args):
            out.write(f"# upsilon exact: {exact_upsilon(G).value}\n")
        else:
            out.write("# upsilon exact: skipped (solver limit)\n")
    return EXIT_OK


def _check_n_max(n_max: int) -> None:
    if n_max < 3:
        raise UsageError(f"n_max must be >= 3, got {n_max}")


def cmd_jaco_table(args, out) -> int:
    _check_n_max(args.n_max)
    rows = jaco_table(args.n_max)
    report = {"command": "jaco-table", "input": str(args.n_max),
              "table": [{"n": r.n, "d_in": r.in_degree, "d_out": r.out_degree,
                         "prime_jaconian": r.prime_jaconian, "upsilon": r.upsilon}
                        for r in rows]}
    lines = ["n  d-(v_n)  d+(v_n)  prime  upsilon"]
    lines += [f"{r.n}  {r.in_degree}  {r.out_degree}  v_{r.prime_jaconian}  {r.upsilon}"
              for r in rows]
    _emit(report, args.format, lines, out)
    return EXIT_OK


def cmd_conjecture(args, out) -> int:
    _check_n_max(args.n_max)
    rep = conjecture_scan(args.n_max)
    report = {
        "command": "conjecture",
        "input": str(args.n_max),
        "table": [{"n": r.n, "d_out": r.out_degree, "upsilon": r.upsilon,
                   "unique_d_out": r.n in rep.unique_out_degree,
                   "unique_upsilon": r.n in rep.unique_upsilon} for r in rep.rows],
        "violations": list(rep.violations),
        "summary": {"unique_d_out": list(rep.unique_out_degree),
                    "unique_upsilon": list(rep.unique_upsilon),
                    "note": rep.note},
    }
    lines = [
        f"range: 3..{args.n_max}",
        "unique d+(v_n) at n: " + " ".join(map(str, rep.unique_out_degree)),
        "unique upsilon at n: " + " ".join(map(str, rep.unique_upsilon)),
        f"{len(rep.violations)} violations" + (
            ": " + " ".join(map(str, rep.violations)) if rep.violations else ""),
        f"note: {rep.note}",
    ]
    _emit(report, args.format, lines, out)
    return EXIT_OK


def _scan_instances(args):
    if args.all_n is not None:
        if not 1 <= args.all_n <= MAX_ALL_N:
            raise UsageError(f"--all-n must be in 1..{MAX_ALL_N}")
        graphs = list(engine.all_labeled_graphs(args.all_n))
        return graphs, f"all-n {args.all_n}"
    if args.random is None or args.max_n is None:
        raise UsageError("scan needs --all-n K or --random COUNT --max-n M")
    if not 1 <= args.max_n <= engine.DEFAULT_SEQUENCE_LIMIT:
        raise SolverLimitError(
            f"--max-n {args.max_n} exceeds sequence limit {engine.DEFAULT_SEQUENCE_LIMIT}")
    rng = np.random.default_rng(args.seed)
    graphs = [engine.random_graph(rng, int(rng.integers(1, args.max_n + 1)))
              for _ in range(args.random)]
    return graphs, f"random {args.random} max-n {args.max_n} seed {args.seed}"


def cmd_scan(args, out) -> int:
    graphs, label = _scan_instances(args)
    policies = [TieBreakPolicy.parse(p) for p in args.policies.split(";") if p.strip()]
    names = [engine.edge_code_name(G) for G in graphs]
    rep = engine.greedy_gap_scan(graphs, policies, names)
    rows = [
        {"name": e.name, "n": e.n, "m": e.m, "exact": e.exact,
         "greedy_best": e.greedy_best, "greedy_worst": e.greedy_worst,
         "lengths": e.lengths, "status": e.status,
         "edges": [list(x) for x in sorted(graphs[e.index].edges)]}
        for e in rep.entries
    ]
    flagged = [r for r in rows if r["status"] != "ok"]
    summary = rep.summary()
    report = {"command": "scan", "input": label,
              "table": rows if args.all_rows or args.format == "json" else flagged,
              "violations": [r["name"] for r in rows if r["status"] == "hard-counterexample"],
              "summary": summary}
    lines = [f"scan: {label}", "policies: " + " ".join(rep.policies)]
    lines += [f"{k}: {v}" for k, v in summary.items()]
    shown = rows if args.all_rows else flagged
    lines.append("name  n  m  exact  best  worst  " + "  ".join(rep.policies) + "  status")
    for r in shown:
        lens = "  ".join("-" if r["lengths"][p] is None else str(r["lengths"][p])
                         for p in rep.policies)
        lines.append(f"{r['name']}  {r['n']}  {r['m']}  {r['exact']}  {r['greedy_best']}  "
                     f"{r['greedy_worst']}  {lens}  {r['status']}")
    _emit(report, args.format, lines, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcpherson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--solver-limit", type=int, default=None,
                        help="max vertices for the exact clique solver "
                             "(default: $MCPHERSON_SOLVER_LIMIT or 64)")

    p = sub.add_parser("compute", parents=[common], help="McPherson numbers of an edge-list graph")
    p.add_argument("file", help="edge-list file, or - for stdin")
    p.add_argument("--greedy-only", action="store_true")
    p.add_argument("--policy", default="lowest",
                   help="lowest | highest | exhaustive | explicit:3,1,...")
    p.add_argument("--sequence-limit", type=int, default=engine.DEFAULT_SEQUENCE_LIMIT)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("gen", parents=[common], help="emit a family member as an edge list")
    p.add_argument("family", help="path cycle complete null matching multipartite jaco "
                                  "platonic union join")
    p.add_argument("params", nargs="*",
                   help="size(s), solid name, or kind:param components for union/join")
    p.add_argument("--upsilon", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("jaco-table", parents=[common], help="Jaco graph table for n = 3..N")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_jaco_table)

    p = sub.add_parser("conjecture", parents=[common], help="out-degree/upsilon uniqueness scan")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("scan", parents=[common], help="greedy recursion versus exact value")
    p.add_argument("--all-n", type=int, default=None)
    p.add_argument("--random", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--policies", default="lowest;highest;exhaustive",
                   help="semicolon-separated policies, e.g. 'lowest;explicit:3'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--all-rows", action="store_true", help="list every instance in text output")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mcpherson: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FamilyError, ValueError) as exc:
        if isinstance(exc, EdgeListParseError):
            print(f"mcpherson: parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        if isinstance(exc, PolicyViolation):
            print(f"mcpherson: policy violation: {exc}", file=sys.stderr)
            return EXIT_POLICY
        print(f"mcpherson: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverLimitError as exc:
        print(f"mcpherson: solver limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"mcpherson: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
