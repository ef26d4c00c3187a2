"""
`prism drw`: normal forms and operators in W_r Omega of F_p[x] and F_p[x, y], the relation
check and the comparison with the décalage side.
"""

import argparse

from ..services import drw as drw_service
from .context import CommandContext, CommandResult


def handle_normalize(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    value = drw_service.drw_normalize(args.expr, args.p, args.r, args.strategy, n=args.n)
    result = {"expression": args.expr, "strategy": args.strategy, "normal_form": value.to_json()}
    if args.check:
        other = "outermost" if args.strategy == "innermost" else "innermost"
        agrees = drw_service.drw_normalize(args.expr, args.p, args.r, other, n=args.n) == value
        result["strategies_agree"] = agrees
        if not agrees:
            context.warn(f"strategies disagree on {args.expr}")
    return CommandResult(result)


def handle_op(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    value = drw_service.drw_normalize(args.expr, args.p, args.r, n=args.n)
    image = drw_service.drw_operator(value, args.op)
    return CommandResult({"expression": args.expr, "op": args.op, "input": value.to_json(), "result": image.to_json()})


def handle_axioms(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    samples = args.samples if args.samples is not None else context.samples
    report = drw_service.drw_axiom_check(args.p, args.r, samples, context.rng, n=args.n)
    result = {"axioms": report.to_json()}
    if args.witt:
        result["witt"] = drw_service.drw_witt_check(args.p, args.r, samples, context.rng, n=args.n).to_json()
    if not report.passed:
        context.warn("de Rham-Witt relations failed on some samples")
    return CommandResult(result)


def handle_compare(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    window = args.D if args.D is not None else (6 if args.n == 1 else 4)
    comparison = drw_service.drw_vs_decalage(args.p, args.r, args.q, window, args.n)
    lines = ["| weight | W_r Omega | Bockstein | eta |", "|---|---|---|---|"]
    for row in comparison.rows:
        lines.append(f"| {row['piece']} | {row['left']} | {row['right']} | {row['eta']} |")
    result = comparison.to_json()
    if args.r == 1:
        result["level_one"] = drw_service.drw_de_rham_collapse(args.p, window, args.n).to_json()
    return CommandResult(result, "\n".join(lines) + "\n")


def _level(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--r", type=int, default=2)
    parser.add_argument("--n", type=int, default=1, choices=(1, 2), help="number of variables")


def register(subparsers) -> None:
    parser = subparsers.add_parser("drw", help="de Rham-Witt complex of F_p[x] and F_p[x, y]")
    actions = parser.add_subparsers(dest="action", metavar="action", required=True)

    normalize = actions.add_parser("normalize", help="normal form of an expression")
    _level(normalize)
    normalize.add_argument("--expr", required=True, help="e.g. 'F(d(V(t([x]))))'")
    normalize.add_argument("--strategy", choices=drw_service.STRATEGIES, default="innermost")
    normalize.add_argument("--check", action="store_true", help="also run the other strategy")
    normalize.set_defaults(handler=handle_normalize)

    op = actions.add_parser("op", help="apply d, F, V or R to a normal form")
    _level(op)
    op.add_argument("--expr", required=True)
    op.add_argument("--op", choices=drw_service.OPERATORS, required=True)
    op.set_defaults(handler=handle_op)

    axioms = actions.add_parser("axioms", help="Witt complex relations on random elements")
    _level(axioms)
    axioms.add_argument("--samples", type=int)
    axioms.add_argument("--witt", action="store_true", help="also compare degree 0 with Witt vectors")
    axioms.set_defaults(handler=handle_axioms)

    compare = actions.add_parser("compare", help="weight lengths against H^q of the Bockstein complex")
    _level(compare)
    compare.add_argument("--q", type=int, default=0, choices=(0, 1, 2))
    compare.add_argument("--D", type=int, help="weight window, default 6 for one variable and 4 for two")
    compare.set_defaults(handler=handle_compare)
