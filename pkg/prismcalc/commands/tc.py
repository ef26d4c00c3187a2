"""
`prism tc`: homotopy groups of the fibers TC_r, TCtilde_r and TC^r.
"""

import argparse

from ..services import tr as tr_service
from .context import CommandContext, CommandResult, add_model_argument, int_range


def handle_tc(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    model = context.perfectoid(args.model)
    first, second = tr_service.tc_maps(args.variant, args.r, model, args.override)
    degrees = list(range(args.degrees[0], args.degrees[1] + 1))
    groups = [tr_service.tc_fiber_groups(args.variant, n, args.r, model, args.override) for n in degrees]
    if args.override:
        context.warn("phi_hS1 uses the corrected image of v")
    lines = ["| degree | group | part | multiplier |", "|---|---|---|---|"]
    for group in groups:
        lines.append(
            f"| {group.degree} | {group.module_label(model.p)} | {group.notes['part']} | {group.notes['multiplier']} |"
        )
    result = {
        "variant": args.variant,
        "r": args.r,
        "maps": [first.to_json(), second.to_json()],
        "groups": [group.to_json(model.p) for group in groups],
    }
    return CommandResult(result, "\n".join(lines) + "\n")


def register(subparsers) -> None:
    parser = subparsers.add_parser("tc", help="fibers of Res - F, can - phi")
    add_model_argument(parser)
    parser.add_argument("--variant", choices=tr_service.TC_VARIANTS, default="TC_r")
    parser.add_argument("--r", type=int, default=1)
    parser.add_argument("--degrees", type=int_range, default=(-1, 4), help="a..b")
    parser.add_argument("--override", action="store_true", help="corrected phi_hS1 image of v")
    parser.set_defaults(handler=handle_tc)
