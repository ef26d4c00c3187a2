"""
`prism crys`: de Rham complexes of Z_p[x_1..x_n] in a weight window and the Cartier check.
"""

import argparse

from ..services import decalage as decalage_service
from .context import CommandContext, CommandResult


def handle_build(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    C = decalage_service.crystalline_complex(args.p, args.n, args.D, args.N, integral=args.integral, weight=args.weight)
    basis = decalage_service.crystalline_basis(args.n, args.D, args.weight)
    H = decalage_service.cohomology(C)
    lines = ["| degree | forms | cohomology |", "|---|---|---|"]
    for q in C.degrees:
        group = " + ".join("Z" if f == 0 else f"Z/{f}" for f in H.factors(q)) or "0"
        lines.append(f"| {q} | {C.rank(q)} | {group} |")
    result = {
        "complex": C.to_json(),
        "basis": {str(q): [decalage_service.form_label(form) for form in forms] for q, forms in basis.items()},
        "cohomology": H.to_json(),
    }
    return CommandResult(result, "\n".join(lines) + "\n")


def handle_cartier(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    report = decalage_service.cartier_check(args.p, args.n, args.D)
    if not report.passed:
        context.warn("inverse Cartier map is not bijective in the window")
    return CommandResult(report.to_json())


def register(subparsers) -> None:
    parser = subparsers.add_parser("crys", help="crystalline complexes of polynomial rings")
    actions = parser.add_subparsers(dest="action", metavar="action", required=True)

    build = actions.add_parser("build", help="complex and cohomology in weights <= D")
    build.add_argument("--p", type=int, default=2)
    build.add_argument("--n", type=int, default=1, choices=(1, 2))
    build.add_argument("--D", type=int, default=4)
    build.add_argument("--N", type=int, default=1, help="work mod p^N")
    build.add_argument("--integral", action="store_true", help="over Z instead of Z/p^N")
    build.add_argument("--weight", type=int, help="single weight piece")
    build.set_defaults(handler=handle_build)

    cartier = actions.add_parser("cartier", help="inverse Cartier bijectivity mod p")
    cartier.add_argument("--p", type=int, default=2)
    cartier.add_argument("--n", type=int, default=1, choices=(1, 2))
    cartier.add_argument("--D", type=int, default=4)
    cartier.set_defaults(handler=handle_cartier)
