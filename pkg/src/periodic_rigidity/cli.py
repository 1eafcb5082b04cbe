"""Command-line front end.

Exit codes: 0 minimally rigid (or command succeeded), 1 not rigid or a
harness disagreement, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .characterize import check, rank_and_dof, refined_check, theorem2_check
from .gain_graph import GraphError
from .generate import KINDS, GenConfig, InfeasibleParameters, generate
from .graphfile import GraphFileError, format_graph_file, load_graph
from .matroid import DecompositionError
from .rigmat import archetype_realization, build_matrix, exact_rank
from .verify import VerifyConfig, run_verify

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


def _add_numeric(p):
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--numeric", action="store_true", help="also compute the exact generic rank")
    p.add_argument("--trials", type=int, default=3, help="random realizations for --numeric")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="periodic-rigidity",
                                     description="Rigidity of periodic body-and-bar frameworks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide minimal rigidity of a quotient graph")
    p.add_argument("path")
    _add_numeric(p)
    p.add_argument("--exhaustive", action="store_true",
                   help="also run the cycle-gain count on every edge subset")

    p = sub.add_parser("dof", help="combinatorial rank and degrees of freedom")
    p.add_argument("path")
    _add_numeric(p)

    p = sub.add_parser("realize", help="emit the explicit full-rank realization")
    p.add_argument("path")
    p.add_argument("-o", "--output", help="write here instead of standard output")
    p.add_argument("--scale", type=int, default=None, help="gain scale N for spare edges (default n+1)")

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--kind", choices=KINDS, default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--box", type=int, default=3)
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="cross-check all oracles on generated instances")
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--inject-failure", type=int, default=None, metavar="INDEX",
                   help="corrupt one verdict to test the harness")
    return parser


def _emit(text: str, path=None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _print_report(rep, as_json: bool, extra=None):
    if as_json:
        obj = rep.to_json()
        if extra:
            obj["extra"].update(extra)
        print(json.dumps(obj, indent=2, sort_keys=True))
        return
    print(f"verdict: {rep.summary()}")
    print(f"edges: {rep.m} (target {rep.target})")
    print(f"combinatorial rank: {rep.combinatorial_rank}")
    if rep.numeric_rank is not None:
        print(f"numeric rank: {rep.numeric_rank}")
    if rep.extra.get("liftable") is False:
        print(f"gain-class multiplicities exceed d: {rep.extra['multiplicities']}")
    if rep.certificate is not None:
        c = rep.certificate
        for i, t in enumerate(c.trees):
            print(f"tree {i}: {list(t)}")
        for i, f in enumerate(c.pseudoforests):
            print(f"pseudo-forest {i}: {list(f)}")
        print(f"spare: {list(c.residual)}")
    if rep.violation is not None:
        v = rep.violation
        print(f"violation: {len(v.edges)} edges > bound {v.bound}: {list(v.edges)}")
    for key, val in (extra or {}).items():
        print(f"{key}: {val}")


def cmd_check(args) -> int:
    g = load_graph(args.path)
    rep = check(g, args.numeric, args.trials, args.seed)
    extra = {}
    if args.exhaustive:
        res = refined_check(g, exhaustive=True)
        extra["cycle_gain_count"] = {"passed": res.passed, "worst_edges": list(res.worst_edges),
                                     "worst_margin": res.worst_margin, "necessary_only": True}
    _print_report(rep, args.json, extra)
    return EXIT_OK if rep.is_minimally_rigid else EXIT_NO


def cmd_dof(args) -> int:
    g = load_graph(args.path)
    rep = rank_and_dof(g, args.numeric, args.trials, args.seed)
    if args.json:
        _print_report(rep, True)
    else:
        print(f"combinatorial rank: {rep.combinatorial_rank}")
        print(f"dof: {rep.dof}")
        print(f"redundancy: {rep.redundancy}")
        if rep.numeric_rank is not None:
            print(f"numeric rank: {rep.numeric_rank}")
    return EXIT_OK


def cmd_realize(args) -> int:
    g = load_graph(args.path)
    rep = theorem2_check(g)
    if not rep.is_minimally_rigid:
        print(f"not decomposable: {rep.summary()}", file=sys.stderr)
        return EXIT_NO
    N = args.scale if args.scale is not None else g.n_vertices + 1
    g2, r = archetype_realization(g, rep.certificate, N)
    rk = exact_rank(build_matrix(g2, r))
    meta = {"scale": str(N), "rank": f"{rk}/{g2.m}"}
    _emit(format_graph_file(g2, r.lattice, meta), args.output)
    return EXIT_OK if rk == g2.m else EXIT_NO


def cmd_gen(args) -> int:
    inst = generate(GenConfig(args.d, args.n, args.m, args.kind, args.seed, args.box))
    meta = {"kind": args.kind, "seed": str(args.seed)}
    if inst.planted:
        meta["planted"] = " ".join(map(str, inst.planted))
    _emit(format_graph_file(inst.graph, None, meta), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = VerifyConfig(tuple(args.dims), args.n_max, args.count, args.seed,
                       out_dir=args.out_dir, inject_failure=args.inject_failure)
    summary = run_verify(cfg, log=lambda s: print(s, file=sys.stderr))
    print(summary.line())
    if summary.numeric_misses:
        for i, explained in summary.numeric_misses:
            why = "degenerate gains; redrawn gains reach it" if explained else "unexplained"
            print(f"instance {i}: numeric rank below combinatorial rank ({why})")
    return EXIT_OK if summary.ok else EXIT_NO


COMMANDS = {"check": cmd_check, "dof": cmd_dof, "realize": cmd_realize, "gen": cmd_gen,
            "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GraphFileError, GraphError, InfeasibleParameters, DecompositionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
