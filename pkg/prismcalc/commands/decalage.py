"""
`prism decalage`: cohomology, eta_f, Bockstein complexes and truncations of
finite integer complexes.

The complex comes from --complex (JSON with lo, ranks and differentials) or
is drawn at random with --random RANKS from the run seed.
"""

import argparse
import json

from ..core.exceptions import ConfigError
from ..models.complexes import FinComplex
from ..models.rings import RingModel
from ..services import decalage as decalage_service
from .context import CommandContext, CommandResult, int_list


def _complex(args: argparse.Namespace, context: CommandContext) -> FinComplex:
    if args.complex:
        try:
            data = json.loads(args.complex)
            return FinComplex.free(
                RingModel.integers(), int(data.get("lo", 0)), data["ranks"], data["differentials"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"Bad complex description: {exc}", key="complex") from exc
    if args.random:
        return decalage_service.random_complex(context.rng, args.random, lo=args.lo, scale=args.scale)
    raise ConfigError("give --complex or --random", key="complex")


def handle_cohomology(args, context: CommandContext) -> CommandResult:
    C = _complex(args, context)
    return CommandResult({"complex": C.to_json(), "cohomology": decalage_service.cohomology(C).to_json()})


def handle_eta(args, context: CommandContext) -> CommandResult:
    C = _complex(args, context)
    E = decalage_service.eta(C, args.f)
    result = {
        "complex": C.to_json(),
        "eta": E.to_json(),
        "comparison": {str(i): {"power": str(e), "basis": [[str(c) for c in row] for row in B]}
                       for i, (e, B) in sorted(E.comparison.items())},
        "cohomology": decalage_service.cohomology(E).to_json(),
    }
    if args.stage is not None:
        result["stages"] = decalage_service.stage_lattices(C, args.f, args.stage)
    return CommandResult(result)


def handle_bockstein(args, context: CommandContext) -> CommandResult:
    C = _complex(args, context)
    B = decalage_service.bockstein_complex(C, args.f)
    return CommandResult({"bockstein": B.to_json(), "cohomology": decalage_service.cohomology(B).to_json()})


def handle_compare(args, context: CommandContext) -> CommandResult:
    C = _complex(args, context)
    report = decalage_service.eta_mod_vs_bockstein(C, args.f)
    if not report.passed:
        context.warn("eta mod f and the Bockstein complex disagree")
    return CommandResult(report.to_json())


def handle_mult(args, context: CommandContext) -> CommandResult:
    C = _complex(args, context)
    return CommandResult(decalage_service.eta_multiplicativity(C, args.f, args.g).to_json())


def handle_truncate(args, context: CommandContext) -> CommandResult:
    C = _complex(args, context)
    T = decalage_service.truncate(C, args.mode, args.a, args.b)
    return CommandResult({"truncated": T.to_json(), "cohomology": decalage_service.cohomology(T).to_json()})


def _input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--complex", help='JSON: {"lo": 0, "ranks": [..], "differentials": [..]}')
    parser.add_argument("--random", type=int_list, help="ranks of a random complex")
    parser.add_argument("--lo", type=int, default=0)
    parser.add_argument("--scale", type=int, default=1, help="multiplier of the first random differential")


def register(subparsers) -> None:
    parser = subparsers.add_parser("decalage", help="décalage on finite complexes")
    actions = parser.add_subparsers(dest="action", metavar="action", required=True)

    for name, handler, help_text in (
        ("cohomology", handle_cohomology, "cohomology with invariant factors"),
        ("eta", handle_eta, "eta_f C and its comparison map"),
        ("bockstein", handle_bockstein, "Bockstein complex H^*(C/f)"),
        ("compare", handle_compare, "H^*(eta_f C / f) against the Bockstein complex"),
        ("mult", handle_mult, "eta_f eta_g against eta_fg"),
        ("truncate", handle_truncate, "tau_leq or window truncation"),
    ):
        action = actions.add_parser(name, help=help_text)
        _input(action)
        if name in ("eta", "bockstein", "compare", "mult"):
            action.add_argument("--f", type=int, required=True)
        if name == "eta":
            action.add_argument("--stage", type=int, help="also report the stage lattices at this stage")
        if name == "mult":
            action.add_argument("--g", type=int, required=True)
        if name == "truncate":
            action.add_argument("--mode", choices=("tau_leq", "window"), default="tau_leq")
            action.add_argument("--a", type=int, required=True)
            action.add_argument("--b", type=int)
        action.set_defaults(handler=handler)
