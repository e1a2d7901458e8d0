"""Command-line front end.

Exit codes: 0 success or consistent, 1 inconsistent (``check``), 2 usage or
parse error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import diagnose as dg
from .gen import GenParams, InvalidParams, generate
from .io import ParseError, export_asp_facts, export_dot, read_instance, write_instance
from .model import InstanceError, Sign, guess_inputs
from .reduce import reduce_inputs
from .solver import BudgetExceeded, Limits, check_consistency

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class _InputFailure(Exception):
    pass


def _load(args):
    try:
        inst = read_instance(args.instance)
    except OSError as exc:
        raise _InputFailure(f"{args.instance}: {exc.strerror or exc}") from exc
    except (ParseError, InstanceError) as exc:
        raise _InputFailure(f"{args.instance}: {exc}") from exc
    if getattr(args, "guess_inputs", False):
        inst = guess_inputs(inst)
    return inst


def _prepared(args):
    """The instance as loaded, and the one the search runs on."""
    original = _load(args)
    if args.no_reduce:
        return original, original
    reduced, _ = reduce_inputs(original)
    return original, reduced


def _witness_lines(inst, witness) -> list[str]:
    lines = [f"obs {name} {witness.vertex_labels[name].symbol}" for name in inst.names]
    for s, d, _ in inst.edges:
        src, dst = inst.names[s], inst.names[d]
        lines.append(f"edge {src} {dst} {witness.edge_labels[(src, dst)].symbol}")
    return lines


def cmd_check(args) -> int:
    original, target = _prepared(args)
    limits = Limits(max_decisions=args.budget)
    try:
        result = check_consistency(target, limits)
        if result.consistent and args.witness and target is not original:
            # report labels for the instance as given, not the reduced one
            result = check_consistency(original, limits)
    except BudgetExceeded:
        print("UNKNOWN")
        print("error: search budget exhausted", file=sys.stderr)
        return EXIT_BUDGET
    if not result.consistent:
        print("INCONSISTENT")
        return EXIT_INCONSISTENT
    print("CONSISTENT")
    if args.witness:
        for line in _witness_lines(original, result.witness):
            print(line)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    _, inst = _prepared(args)
    if args.mode == "one":
        report = dg.diagnose_one(inst, budget=args.budget)
    elif args.mode == "approx":
        report = dg.approximate_all_mics(inst, budget=args.budget)
    else:
        report = dg.find_all_mics(
            inst,
            max_cardinality=args.max_card,
            budget=args.budget,
            dynamic_connectivity=args.dynamic_scc,
        )
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(inst, report.mics, report.merged))
    if report.budget_exhausted:
        print("error: diagnosis budget exhausted; output is partial", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_reduce(args) -> int:
    inst = _load(args)
    reduced, report = reduce_inputs(inst)
    text = write_instance(reduced)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for line in report.trace_lines():
        print(line)
    return EXIT_OK


def cmd_generate(args) -> int:
    params = GenParams(
        alpha=args.alpha, beta=args.beta, gamma=args.gamma, seed=args.seed, edges=args.edges
    )
    try:
        inst = generate(params)
    except InvalidParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(write_instance(inst))
    return EXIT_OK


def cmd_export(args) -> int:
    inst = _load(args)
    sys.stdout.write(export_asp_facts(inst) if args.format == "asp" else export_dot(inst))
    return EXIT_OK


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signcons",
        description="Check sign consistency of influence graphs and diagnose inconsistencies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_text, func, reduction=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance", help="instance file in the native format")
        p.add_argument("--guess-inputs", action="store_true",
                       help="treat vertices without regulators as inputs")
        if reduction:
            p.add_argument("--no-reduce", action="store_true",
                           help="skip input reduction before searching")
        p.set_defaults(func=func)
        return p

    p = instance_cmd("check", "decide consistency", cmd_check)
    p.add_argument("--witness", action="store_true",
                   help="print a total labeling as obs/edge lines when consistent")
    p.add_argument("--budget", type=_nonneg, default=None, metavar="N",
                   help="maximum number of search decisions")

    p = instance_cmd("diagnose", "find minimal inconsistent cores", cmd_diagnose)
    p.add_argument("--mode", choices=("one", "all", "approx"), default="all")
    p.add_argument("--max-card", type=_nonneg, default=dg.DEFAULT_MAX_CARDINALITY, metavar="K",
                   help="largest core size enumerated by --mode all (default %(default)s)")
    p.add_argument("--budget", type=_nonneg, default=dg.DEFAULT_BUDGET, metavar="N",
                   help="maximum number of consistency checks (default %(default)s)")
    p.add_argument("--dot", metavar="PATH", help="write the merged cores as DOT to PATH")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--dynamic-scc", action="store_true",
                   help="skip candidates that are not strongly connected in their core graph")

    p = instance_cmd("reduce", "extend the input set by input reduction", cmd_reduce,
                     reduction=False)
    p.add_argument("-o", "--output", metavar="PATH",
                   help="write the reduced instance to PATH and print only the trace")

    p = sub.add_parser("generate", help="sample a random instance")
    p.add_argument("--alpha", type=int, required=True, help="number of vertices")
    p.add_argument("--beta", type=float, default=2.5, help="average degree (default %(default)s)")
    p.add_argument("--gamma", type=float, default=0.1,
                   help="fraction of observed vertices (default %(default)s)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--edges", type=_nonneg, default=None, help="exact edge count, overrides --beta")
    p.set_defaults(func=cmd_generate)

    p = instance_cmd("export", "write an instance as ASP facts or DOT", cmd_export,
                     reduction=False)
    p.add_argument("--format", choices=("asp", "dot"), required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
