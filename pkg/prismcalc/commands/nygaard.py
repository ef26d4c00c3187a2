"""
`prism nygaard`: filtration membership, divided Frobenius and the identities around them.
"""

import argparse

from ..services import nygaard as nygaard_service
from ..services.nygaard import AinfPrism, PrismModel, ScalarPrism
from .context import CommandContext, CommandResult, add_model_argument


def _prism(args: argparse.Namespace, context: CommandContext) -> PrismModel:
    if args.scalar:
        section = context.model_section(args.model)
        return ScalarPrism(section.p, section.N or 8)
    return AinfPrism(context.perfectoid(args.model))


def handle_member(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    x = prism.parse(args.x)
    return CommandResult(
        {"prism": prism.describe(), "x": str(x), "i": args.i, "r": args.r,
         "member": nygaard_service.nygaard_member(prism, x, args.i, args.r)}
    )


def handle_tuple(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    return CommandResult(nygaard_service.nygaard_tuple(prism, prism.parse(args.x), args.i, args.r).to_json())


def handle_divfrob(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    x = prism.parse(args.x)
    value = nygaard_service.divided_frobenius(prism, x, args.i, args.r)
    return CommandResult({"x": str(x), "i": args.i, "r": args.r, "phi_r_i": str(value)})


def handle_gr(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    piece = nygaard_service.gr_piece(prism, args.i, args.r)
    result = piece.to_json()
    if args.x:
        result["coordinate"] = str(piece.reduce(prism.parse(args.x)))
    return CommandResult(result)


def handle_ht(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    cls = nygaard_service.hodge_tate_r(prism, prism.parse(args.x), args.r)
    return CommandResult({"r": args.r, "class": str(cls), "zero": cls.is_zero()})


def handle_maps(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    x = prism.parse(args.x)
    image = nygaard_service.filtration_maps(prism, x, args.i, args.r, args.which)
    return CommandResult({"map": args.which, "x": str(x), "i": args.i, "r": args.r, "image": str(image)})


def handle_pullback(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    x = prism.parse(args.x)
    result = nygaard_service.pullback_step(prism, x, args.i, args.r)
    if result["level_r_plus_1"]:
        result["frobenius_compatible"] = nygaard_service.frobenius_compatibility(prism, x, args.i, args.r)
    return CommandResult(result)


def handle_compare(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    result = nygaard_service.exponent_comparison(prism, prism.parse(args.x), args.i, args.r)
    if not result["consistent"]:
        context.warn(f"phi^r and phi^(ri) membership differ for i={args.i}, r={args.r}")
    return CommandResult(result)


def handle_gr0(args, context: CommandContext) -> CommandResult:
    prism = _prism(args, context)
    samples = args.samples if args.samples is not None else context.samples
    return CommandResult(nygaard_service.gr0_witt_iso(prism, args.r, context.rng, samples).to_json())


ACTIONS = {
    "member": (handle_member, "x in N_r^{>=i}", True, True),
    "tuple": (handle_tuple, "iterated-pullback coordinates", True, True),
    "divfrob": (handle_divfrob, "divided Frobenius phi_{r,i}", True, True),
    "gr": (handle_gr, "graded piece N_r^i", False, True),
    "ht": (handle_ht, "Hodge-Tate class modulo d~_r", True, False),
    "maps": (handle_maps, "Res, F or V between levels", True, True),
    "pullback": (handle_pullback, "pullback square at level r", True, True),
    "compare": (handle_compare, "phi^r against phi^(ri) membership", True, True),
    "gr0": (handle_gr0, "gr^0 against W_r", False, False),
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("nygaard", help="r-Nygaard filtration")
    actions = parser.add_subparsers(dest="action", metavar="action", required=True)
    for name, (handler, help_text, needs_x, needs_i) in ACTIONS.items():
        action = actions.add_parser(name, help=help_text)
        add_model_argument(action)
        action.add_argument("--scalar", action="store_true", help="use (Z_p, (p)) with identity Frobenius")
        action.add_argument("--r", type=int, default=1)
        if needs_x:
            action.add_argument("--x", required=True, help="element, e.g. 'p^3*t'")
        elif name == "gr":
            action.add_argument("--x", help="element whose coordinate is reported")
        if needs_i:
            action.add_argument("--i", type=int, default=1)
        if name == "maps":
            action.add_argument("--which", choices=nygaard_service.FILTRATION_MAPS, default="Res")
        if name == "gr0":
            action.add_argument("--samples", type=int)
        action.set_defaults(handler=handler)
