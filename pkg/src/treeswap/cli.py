"""Command-line front end: solve, approx, gen, verify, experiment.

Results go to stdout as JSON (CSV for ratio tables); diagnostics to stderr.
Exit codes: 0 success, 1 verification failed, 2 parse error, 3 algorithm or
family mismatch, 4 instance too large.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import sys
from pathlib import Path

from . import approx, constructions, experiments, exact_special, io, oracle
from .core import Instance, apply_sequence
from .errors import (
    InstanceFormatError,
    NonEdgeSwap,
    TooLarge,
    TreeswapError,
)

EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_TOO_LARGE = 4


def _read_instance(path: str) -> Instance:
    try:
        return io.parse_instance(Path(path).read_text())
    except FileNotFoundError:
        raise InstanceFormatError(f"no such file: {path}")


def _standard(inst: Instance) -> bool:
    return inst.colouring is None or (
        inst.distinct_colours and inst.is_goal(tuple(range(inst.n)))
    )


def _auto_algorithm(inst: Instance) -> str:
    family = inst.tree.classify()
    if family == "path":
        return "path"
    if family == "star":
        if _standard(inst):
            return "weighted-star" if inst.weights is not None else "star"
        return (
            "weighted-coloured-star" if inst.weights is not None else "coloured-star"
        )
    if family == "broom" and _standard(inst) and inst.weights is None:
        return "broom"
    return "oracle"


def _run_algorithm(inst: Instance, algorithm: str, forbid, cap):
    meta: dict = {"algorithm": algorithm}
    if algorithm == "path":
        if _standard(inst) and inst.weights is None:
            swaps = exact_special.solve_path(inst)
        else:
            swaps = exact_special.solve_weighted_coloured_path(inst)
    elif algorithm == "star":
        swaps = exact_special.solve_star(inst)
    elif algorithm == "weighted-star":
        swaps, summary = exact_special.solve_weighted_star(inst)
        meta["strategy"] = summary.strategy
        meta["l"] = summary.l
    elif algorithm == "coloured-star":
        _, swaps, graph = exact_special.solve_coloured_star(inst)
        meta["leaf_loops"] = graph.leaf_loops
        meta["kappa"] = graph.kappa
    elif algorithm == "weighted-coloured-star":
        swaps = exact_special.solve_weighted_coloured_star(inst)
    elif algorithm == "broom":
        swaps, trace = exact_special.solve_broom(inst)
        meta["trace"] = {
            "w": trace.w,
            "lucky": trace.lucky,
            "s_u": trace.s_u,
            "n_s": trace.n_s,
            "l_s": trace.l_s,
        }
    elif algorithm == "oracle":
        result = oracle.optimal(inst, forbidden_vertices=forbid, cap=cap)
        meta["states_expanded"] = result.states_expanded
        return result.swaps, meta
    else:
        raise TreeswapError(f"unknown algorithm {algorithm!r}")
    if forbid:
        raise TreeswapError("--forbid is only supported with --algorithm oracle")
    return swaps, meta


def _cmd_solve(args) -> int:
    inst = _read_instance(args.instance)
    algorithm = args.algorithm
    if algorithm == "auto":
        # move restrictions only make sense in the explicit search
        algorithm = "oracle" if args.forbid else _auto_algorithm(inst)
        if algorithm == "oracle" and inst.n > (args.cap or oracle.DEFAULT_CAP):
            raise TooLarge(
                f"no exact solver applies and n={inst.n} exceeds the oracle cap"
            )
    swaps, meta = _run_algorithm(inst, algorithm, args.forbid, args.cap)
    res = apply_sequence(inst, swaps)
    print(io.serialize_solution(swaps, res.cost, res.length, meta))
    return 0


def _cmd_approx(args) -> int:
    inst = _read_instance(args.instance)
    fn = {
        "happy-swap": approx.happy_swap_algorithm,
        "cycle": approx.cycle_algorithm,
        "vaughan": approx.vaughan_algorithm,
    }[args.method]
    swaps = fn(inst)
    res = apply_sequence(inst, swaps)
    print(io.serialize_solution(swaps, res.cost, res.length, {"algorithm": args.method}))
    return 0


def _cmd_gen(args) -> int:
    meta: dict = {"algorithm": "companion"}
    if args.family == "happy-leaf":
        inst, swaps = constructions.gen_happy_leaf_counterexample()
    elif args.family == "tk":
        if args.k is None:
            raise TreeswapError("--family tk needs --k")
        out = constructions.gen_Tk(args.k)
        inst, swaps = out.instance, out.companion
        meta["reversal_cost"] = out.reversal_cost
        meta["phase_counts"] = list(out.phase_counts)
    elif args.family == "tkb":
        if args.k is None or args.b is None:
            raise TreeswapError("--family tkb needs --k and --b")
        out = constructions.gen_Tkb(args.k, args.b, fix_even=args.fix_even)
        inst, swaps = out.instance, out.companion
        meta["step_count"] = out.step_count
        meta["fixup_count"] = out.fixup_count
    elif args.family == "vc":
        if args.graph is None or args.q is None:
            raise TreeswapError("--family vc needs --graph and --q")
        try:
            doc = json.loads(Path(args.graph).read_text())
            vc = constructions.VertexCoverInput(doc["n"], doc["edges"], args.q)
        except (json.JSONDecodeError, KeyError, TypeError, FileNotFoundError) as exc:
            raise InstanceFormatError(f"graph file: {exc}")
        red = constructions.build_vc_reduction(vc, L_r=args.lr)
        inst = red.instance
        meta.update(
            beta=red.beta,
            beta_prime=red.beta_prime,
            budget=red.budget,
            L_r=red.L_r,
        )
        swaps = None
        if args.cover is not None:
            swaps = constructions.vc_to_sequence(red, args.cover)
    else:
        raise TreeswapError(f"unknown family {args.family!r}")

    instance_text = io.serialize_instance(inst)
    if args.out:
        Path(args.out).write_text(instance_text)
    else:
        print(instance_text)
    if args.solution:
        if swaps is None:
            raise TreeswapError("no companion sequence for this invocation")
        res = apply_sequence(inst, swaps)
        with open(args.solution, "w") as fh:
            io.serialize_solution(swaps, res.cost, res.length, meta, stream=fh)
    return 0


def _cmd_verify(args) -> int:
    inst = _read_instance(args.instance)
    try:
        swaps, doc = io.parse_solution(Path(args.solution).read_text())
    except FileNotFoundError:
        raise InstanceFormatError(f"no such file: {args.solution}")
    res = apply_sequence(inst, swaps)
    reached = inst.is_goal(res.placement)
    report = {
        "valid_swaps": True,
        "goal_reached": reached,
        "length": res.length,
        "cost": io._num(res.cost),
        "final": list(res.placement),
    }
    declared = doc.get("length")
    if declared is not None:
        report["declared_length_matches"] = declared == res.length
    print(json.dumps(report))
    return 0 if reached else EXIT_VERIFY_FAILED


def _cmd_experiment(args) -> int:
    if args.what == "happy-leaf-search":
        if args.tree == "happy-leaf":
            report = experiments.happy_leaf_search(
                trees=[experiments.happy_leaf_tree()]
            )
        else:
            report = experiments.happy_leaf_search(max_n=args.max_n)
        print(json.dumps(report))
        return 0
    if args.what == "ratio":
        if args.family == "tk":
            rows = experiments.ratio_rows_tk(args.k)
        else:
            bs = args.b if args.b else args.k
            if len(bs) != len(args.k):
                raise TreeswapError("--k and --b need the same number of values")
            rows = experiments.ratio_rows_tkb(
                args.k, bs, with_happy_swap=args.with_happy_swap
            )
        buf = _stdio.StringIO()
        fields = sorted({key for row in rows for key in row}, key=_field_order)
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return 0
    raise TreeswapError(f"unknown experiment {args.what!r}")


def _field_order(name: str):
    preferred = ["family", "k", "b", "n", "companion", "reversal", "cycle", "happy_swap"]
    return (preferred.index(name), name) if name in preferred else (len(preferred), name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeswap", description="Token swapping on trees"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact solve with the most specific algorithm")
    p.add_argument("instance")
    p.add_argument(
        "--algorithm",
        default="auto",
        choices=[
            "auto",
            "path",
            "star",
            "weighted-star",
            "coloured-star",
            "weighted-coloured-star",
            "broom",
            "oracle",
        ],
    )
    p.add_argument("--forbid", type=int, nargs="*", default=[], metavar="V")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("approx", help="run a 2-approximation algorithm")
    p.add_argument("instance")
    p.add_argument("--method", required=True, choices=["happy-swap", "cycle", "vaughan"])
    p.set_defaults(fn=_cmd_approx)

    p = sub.add_parser("gen", help="generate a hard instance (+ companion solution)")
    p.add_argument("--family", required=True, choices=["happy-leaf", "tk", "tkb", "vc"])
    p.add_argument("--k", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--fix-even", action="store_true")
    p.add_argument("--graph", help="JSON graph file {n, edges} for --family vc")
    p.add_argument("--q", type=int)
    p.add_argument("--lr", type=int, default=None)
    p.add_argument("--cover", type=int, nargs="*", default=None)
    p.add_argument("--out", help="write the instance here instead of stdout")
    p.add_argument("--solution", help="write the companion solution here")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("verify", help="replay a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("experiment", help="reproduce the desk-scale experiments")
    p.add_argument("what", choices=["happy-leaf-search", "ratio"])
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--tree", choices=["all", "happy-leaf"], default="all")
    p.add_argument("--family", choices=["tk", "tkb"], default="tk")
    p.add_argument("--k", type=int, nargs="*", default=[10, 100, 1000])
    p.add_argument("--b", type=int, nargs="*", default=None)
    p.add_argument("--with-happy-swap", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    p.set_defaults(fn=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except NonEdgeSwap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except TreeswapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
