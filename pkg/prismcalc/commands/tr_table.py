"""
`prism tr-table`: homotopy tables of TR^r, its hS1 fixed points, TC^- and TP,
with optional structure maps, towers and symmetric power checks.
"""

import argparse

from ..models.graded import GradedKind
from ..services import tr as tr_service
from .context import CommandContext, CommandResult, add_model_argument, int_range

TOWER_KINDS = ("filtration", "graded", "Res", "F")


def handle_table(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    model = context.perfectoid(args.model)
    kind = GradedKind.parse(args.kind)
    degrees = list(range(args.degrees[0], args.degrees[1] + 1))
    pres = tr_service.presentation(kind, args.r, model)
    result = {
        "presentation": pres.to_json(),
        "rows": tr_service.table_rows(kind, args.r, degrees, model),
    }
    if args.map:
        spec = tr_service.structure_map(args.map, args.r, model, override=args.override)
        result["map"] = spec.to_json()
        if not spec.valid:
            context.warn(f"structure map {args.map} at level {args.r} does not respect the relation")
    if args.tower:
        lo, hi = args.levels
        limits = []
        for n in degrees:
            if args.tower in ("filtration", "graded"):
                if n % 2 or n < 0:
                    continue
                limits.append(tr_service.filtration_tower(args.tower, n // 2, (lo, hi), model).to_json())
            else:
                limits.append(tr_service.structure_tower(kind, n, (lo, hi), model, args.tower).to_json())
        result["towers"] = limits
    if args.sym is not None:
        result["symmetric_power"] = tr_service.symmetric_power_check(kind, args.r, args.sym, model).to_json()
    return CommandResult(result, tr_service.render_table(kind, args.r, degrees, model))


def register(subparsers) -> None:
    parser = subparsers.add_parser("tr-table", help="graded homotopy of TR^r and relatives")
    add_model_argument(parser)
    parser.add_argument("--kind", default="trr", help="trr, trr_hs1, tcminus or tp")
    parser.add_argument("--r", type=int, default=1)
    parser.add_argument("--degrees", type=int_range, default=(0, 4), help="a..b")
    parser.add_argument("--map", choices=tr_service.MAP_NAMES, help="also build and validate a structure map")
    parser.add_argument("--override", action="store_true", help="corrected phi_hS1 image of v")
    parser.add_argument("--tower", choices=TOWER_KINDS, help="lim/lim^1 of a tower per degree")
    parser.add_argument("--levels", type=int_range, default=(1, 8), help="tower levels a..b")
    parser.add_argument("--sym", type=int, help="check Sym^i pi_2 -> pi_2i")
    parser.set_defaults(handler=handle_table)
