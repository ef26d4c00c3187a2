"""
`prism witt`: arithmetic, operators, Teichmüller lifts and polynomial tables.
"""

import argparse
from typing import List

from ..core.exceptions import ConfigError
from ..models.rings import RingKind
from ..models.witt import WittVector
from ..services.witt import ARITH_OPS, OPERATORS, ghost, teichmuller, witt_arith, witt_operator, witt_polynomials
from .context import CommandContext, CommandResult, base_ring, int_list


def _vector(args: argparse.Namespace, values: List[int]) -> WittVector:
    base = base_ring(args.base, args.p)
    if len(values) != args.r:
        raise ConfigError(f"expected {args.r} components, got {len(values)}", key="x")
    return WittVector.of(args.p, base, values)


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--r", type=int, default=2)
    parser.add_argument("--base", default="Z", help="Z, Fp or Z/m")


def handle_arith(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    x, y = _vector(args, args.x), _vector(args, args.y)
    z = witt_arith(x, y, args.op)
    result = {"op": args.op, "x": x.to_json(), "y": y.to_json(), "result": z.to_json()}
    if x.base.kind == RingKind.INTEGERS:
        result["ghost"] = [str(c) for c in ghost(z).components]
    return CommandResult(result)


def handle_op(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    x = _vector(args, args.x)
    return CommandResult({"op": args.op, "x": x.to_json(), "result": witt_operator(x, args.op).to_json()})


def handle_teich(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    base = base_ring(args.base, args.p)
    lift = teichmuller(base.scalar(args.a), args.r, args.p)
    return CommandResult({"a": args.a, "result": lift.to_json()})


def handle_table(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    table = witt_polynomials(args.p, args.r)
    return CommandResult(table.to_json(show_polynomials=not args.counts_only))


def register(subparsers) -> None:
    parser = subparsers.add_parser("witt", help="truncated p-typical Witt vectors")
    actions = parser.add_subparsers(dest="action", metavar="action", required=True)

    arith = actions.add_parser("arith", help="x op y by universal polynomials")
    _common(arith)
    arith.add_argument("--op", choices=ARITH_OPS, default="add")
    arith.add_argument("--x", type=int_list, required=True, help="comma separated components")
    arith.add_argument("--y", type=int_list, required=True)
    arith.set_defaults(handler=handle_arith)

    op = actions.add_parser("op", help="F, V or R")
    _common(op)
    op.add_argument("--op", choices=OPERATORS, required=True)
    op.add_argument("--x", type=int_list, required=True)
    op.set_defaults(handler=handle_op)

    teich = actions.add_parser("teich", help="Teichmüller representative of a base integer")
    _common(teich)
    teich.add_argument("--a", type=int, required=True)
    teich.set_defaults(handler=handle_teich)

    table = actions.add_parser("table", help="universal polynomial table")
    table.add_argument("--p", type=int, default=2)
    table.add_argument("--r", type=int, default=2)
    table.add_argument("--counts-only", action="store_true")
    table.set_defaults(handler=handle_table)
