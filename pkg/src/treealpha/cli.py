"""Command-line surface.

Commands: exact, pipeline, check, mwis, constants, cover, ramsey,
survey. Graphs are read as graph6 (.g6) or plain edge list (first line
n, then "u v" lines). Exit codes: 0 success, 2 malformed input, 3 cap
refusal, 4 hypothesis violation or oracle contract breach.

Environment overrides (flags win over environment):
    TREEALPHA_CAP_EXACT     vertex cap for the exact tree-alpha oracle
    TREEALPHA_CAP_PIPELINE  vertex cap for the decomposition pipeline
    TREEALPHA_CAP_DIGITS    decimal digit cap for constant evaluation
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import bounds, covering, decomp, patterns, ramsey, solver
from .errors import (CapExceeded, ContractBreach, FormatError,
                     HypothesisViolation, TreeAlphaError)
from .formats import load_graph
from .graphs import Graph, alpha

_EXIT_FORMAT = 2
_EXIT_CAP = 3
_EXIT_HYPOTHESIS = 4


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise FormatError(f"environment variable {name} is not an integer: {raw!r}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, default=str))
    else:
        print(text)


# -- exact ------------------------------------------------------------------


def cmd_exact(args) -> int:
    g = load_graph(args.graph)
    cap = args.cap if args.cap is not None else _env_int("TREEALPHA_CAP_EXACT", 9)
    value, td = decomp.exact_tree_alpha(g, cap=cap)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(td.to_text())
    _emit(args, {"n": g.n, "ta": value, "out": args.out}, f"ta={value}")
    return 0


def cmd_pipeline(args) -> int:
    g = load_graph(args.graph)
    cap = args.cap if args.cap is not None else _env_int("TREEALPHA_CAP_PIPELINE", 12)
    td = decomp.ta_pipeline(g, args.b, args.c, args.d, n_cap=cap)
    measure = decomp.decomposition_alpha(td)
    bound = bounds.assembly_bound(args.c, args.d)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(td.to_text())
    _emit(args, {"n": g.n, "measure": measure, "bound": bound,
                 "nodes": td.num_nodes(), "out": args.out},
          f"measure={measure} bound={bound} nodes={td.num_nodes()}")
    return 0


# -- pattern checking ---------------------------------------------------------


def cmd_check(args) -> int:
    g = load_graph(args.graph)
    for spec_text in args.pattern or []:
        spec = patterns.parse_pattern(spec_text)
        started = time.perf_counter()
        emb = patterns.contains_induced(g, patterns.realize(spec))
        ms = 1000 * (time.perf_counter() - started)
        payload = {"pattern": spec_text, "free": emb is None,
                   "witness": emb, "ms": round(ms, 3)}
        if spec.kind == "wall":
            r, c = spec.params
            payload["wall_vertices"] = patterns.wall_vertex_count(r, c)
        if args.format == "json":
            print(json.dumps(payload))
        else:
            verdict = "free" if emb is None else f"witness {emb}"
            extra = ""
            if spec.kind == "wall":
                r, c = spec.params
                extra = (f"  [wall vertices (r+1)(2c+2)-2 = "
                         f"{patterns.wall_vertex_count(r, c)}]")
            print(f"{spec_text}: {verdict}{extra}")
    if args.wall_line:
        spec = patterns.parse_pattern(args.wall_line)
        verdict = patterns.contains_line_of_wall_subdivision(g, spec, args.budget)
        payload = {"pattern": f"line-of-subdivision {args.wall_line}",
                   "status": verdict.status,
                   "witness_counts": verdict.witness_counts,
                   "candidates": verdict.candidates_tested}
        if args.format == "json":
            print(json.dumps(payload))
        else:
            print(f"line-of-subdivision {args.wall_line}: {verdict.status} "
                  f"(candidates {verdict.candidates_tested})")
    return 0


# -- mwis -----------------------------------------------------------------------


def cmd_mwis(args) -> int:
    g = load_graph(args.graph)
    if args.weights:
        with open(args.weights, encoding="ascii") as fh:
            w = decomp.parse_weights(fh.read(), g.n)
    else:
        w = [Fraction(1)] * g.n
    if args.td:
        with open(args.td, encoding="ascii") as fh:
            td = decomp.TreeDecomposition.from_text(g, fh.read())
    elif args.exact:
        _, td = decomp.exact_tree_alpha(
            g, cap=_env_int("TREEALPHA_CAP_EXACT", 9))
    else:
        td = solver.greedy_fill_decomposition(g)
    value, chosen = solver.mwis_over_decomposition(g, w, td)
    if args.verify:
        ref_value, _ = solver.mwis_bruteforce(g, w)
        if ref_value != value:
            raise AssertionError("decomposition DP disagrees with brute force")
    _emit(args, {"weight": str(value), "set": sorted(chosen)},
          f"weight={value} set={sorted(chosen)}")
    return 0


# -- constants --------------------------------------------------------------------


def cmd_constants(args) -> int:
    cap = args.digit_cap if args.digit_cap is not None else _env_int(
        "TREEALPHA_CAP_DIGITS", ramsey.DEFAULT_DIGIT_CAP)
    table = bounds.BoundsTable(digit_cap=cap)
    if args.list:
        for name in table.names():
            argnames, _ = table.registry[name]
            print(f"{name}({', '.join(argnames)})")
        return 0
    if not args.name:
        raise FormatError("constant name required (or --list)")
    value = table.evaluate(args.name, [int(x) for x in args.args])
    _emit(args, {"name": args.name, "args": [int(x) for x in args.args],
                 "value": str(value)}, str(value))
    return 0


# -- covering ----------------------------------------------------------------------


def cmd_cover(args) -> int:
    with open(args.graphs, encoding="ascii") as fh:
        shared = covering.SharedVertexGraphs.from_text(fh.read())
    if shared.b == 2:
        witness = covering.cover_two(shared, args.a, args.q)
    else:
        witness = covering.cover_many(shared, args.a, args.q)
    payload = {"parts": [sorted(p) for p in witness.parts],
               "alphas": list(witness.alphas),
               "bound": str(witness.bound) if witness.bound is not None else None}
    _emit(args, payload,
          "\n".join(f"part {i}: {sorted(p)} (alpha {a})"
                    for i, (p, a) in enumerate(zip(witness.parts, witness.alphas)))
          + f"\nbound: {payload['bound']}")
    return 0


# -- ramsey -------------------------------------------------------------------------


def cmd_ramsey(args) -> int:
    if args.threshold:
        r, s, t = (int(x) for x in args.threshold)
        fn = (ramsey.product_threshold if args.mode == "product"
              else ramsey.subset_threshold)
        value = fn(r, s, t)
        _emit(args, {"mode": args.mode, "threshold": str(value)}, str(value))
        return 0
    if not args.table:
        raise FormatError("need --table or --threshold")
    with open(args.table, encoding="ascii") as fh:
        text = fh.read()
    if args.mode == "product":
        coloring = ramsey.ProductColoring.from_text(text)
        got = ramsey.mono_product(coloring, args.t)
        payload = {"found": got is not None}
        if got:
            payload.update(color=str(got[0]), boxes=[list(b) for b in got[1]])
    else:
        coloring = ramsey.SubsetColoring.from_text(text)
        got = ramsey.mono_subset(coloring, args.t, strategy=args.strategy)
        payload = {"found": got is not None}
        if got:
            payload.update(color=str(got[0]), witness=list(got[1]))
    _emit(args, payload, json.dumps(payload))
    return 0


# -- survey --------------------------------------------------------------------------


_SURVEY_COLUMNS = ["trial", "n", "p", "accepted", "ta_exact",
                   "pipeline_measure", "pipeline_bound", "pattern_ms"]


def cmd_survey(args) -> int:
    forbidden = [patterns.parse_pattern(s) for s in (args.forbid or [])]
    forbidden_graphs = [patterns.realize(s) for s in forbidden]
    kaa = Graph.complete_bipartite(args.a, args.a)
    densities = [float(x) for x in args.densities.split(",")]
    exact_cap = _env_int("TREEALPHA_CAP_EXACT", args.exact_cap)
    rows = []
    accepted_count = 0
    for trial in range(args.trials):
        rng = random.Random(f"{args.seed}:{trial}")
        n = rng.randint(args.n_min, args.n_max)
        p = densities[trial % len(densities)]
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        g = Graph(n, edges)
        started = time.perf_counter()
        ok = patterns.contains_induced(g, kaa) is None and all(
            patterns.contains_induced(g, h) is None for h in forbidden_graphs)
        ms = round(1000 * (time.perf_counter() - started), 3)
        row = {"trial": trial, "n": n, "p": p, "accepted": int(ok),
               "ta_exact": "", "pipeline_measure": "", "pipeline_bound": "",
               "pattern_ms": ms}
        if ok:
            accepted_count += 1
            if n <= exact_cap:
                row["ta_exact"], _ = decomp.exact_tree_alpha(g, cap=exact_cap)
            else:
                try:
                    td = decomp.ta_pipeline(g, args.b, args.c, args.d)
                    row["pipeline_measure"] = decomp.decomposition_alpha(td)
                    row["pipeline_bound"] = bounds.assembly_bound(args.c, args.d)
                except (HypothesisViolation, CapExceeded):
                    row["pipeline_measure"] = "failed"
        rows.append(row)
    with open(args.out, "w", newline="", encoding="ascii") as fh:
        writer = csv.DictWriter(fh, fieldnames=_SURVEY_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    if args.trials and not accepted_count:
        print("survey: no sampled graph passed the class filter "
              "(empty sample)", file=sys.stderr)
    _emit(args, {"trials": args.trials, "accepted": accepted_count,
                 "out": args.out},
          f"trials={args.trials} accepted={accepted_count} out={args.out}")
    return 0


# -- wiring ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="treealpha", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("exact", help="exact tree independence number")
    p.add_argument("--graph", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--out", help="write the optimal decomposition here")
    common(p)
    p.set_defaults(fn=cmd_exact)

    p = sub.add_parser("pipeline", help="separator-pipeline decomposition")
    p.add_argument("--graph", required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-c", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--out")
    common(p)
    p.set_defaults(fn=cmd_pipeline)

    p = sub.add_parser("check", help="induced pattern checks")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", action="append")
    p.add_argument("--wall-line", help="wall spec for the line-of-subdivision search")
    p.add_argument("--budget", type=int, default=10000)
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("mwis", help="maximum weight independent set")
    p.add_argument("--graph", required=True)
    p.add_argument("--weights")
    p.add_argument("--td", help="decomposition file to solve over")
    p.add_argument("--exact", action="store_true",
                   help="solve over the optimal decomposition")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against brute force")
    common(p)
    p.set_defaults(fn=cmd_mwis)

    p = sub.add_parser("constants", help="evaluate a named constant")
    p.add_argument("name", nargs="?")
    p.add_argument("args", nargs="*")
    p.add_argument("--digit-cap", type=int)
    p.add_argument("--list", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("cover", help="cover a shared vertex set")
    p.add_argument("--graphs", required=True,
                   help="multi-graph file (edge blocks separated by --)")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_cover)

    p = sub.add_parser("ramsey", help="monochromatic witness search")
    p.add_argument("--mode", choices=("subset", "product"), default="subset")
    p.add_argument("--table", help="coloring table file")
    p.add_argument("-t", type=int, default=3)
    p.add_argument("--strategy", choices=("exhaustive", "stepping_up"),
                   default="exhaustive")
    p.add_argument("--threshold", nargs=3, metavar=("R", "S", "T"),
                   help="print the threshold bound instead")
    common(p)
    p.set_defaults(fn=cmd_ramsey)

    p = sub.add_parser("survey", help="random in-class survey")
    p.add_argument("--seed", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("-a", type=int, default=2)
    p.add_argument("--forbid", action="append",
                   help="pattern specs the class excludes (repeatable)")
    p.add_argument("-b", type=int, default=2)
    p.add_argument("-c", type=int, default=2)
    p.add_argument("-d", type=int, default=2)
    p.add_argument("--exact-cap", type=int, default=9)
    p.add_argument("--densities", default="0.1,0.2,0.3,0.5,0.7")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(fn=cmd_survey)
    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_FORMAT
    except CapExceeded as exc:
        print(f"cap refusal: {exc}", file=sys.stderr)
        return _EXIT_CAP
    except (HypothesisViolation, ContractBreach) as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return _EXIT_HYPOTHESIS
    except (OSError, ValueError, TreeAlphaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
