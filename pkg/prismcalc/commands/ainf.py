"""
`prism ainf`: distinguished elements, theta maps, Fontaine diagrams and sharp.
"""

import argparse

from ..services import ainf as ainf_service
from .context import CommandContext, CommandResult, add_model_argument


def handle_xi(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    model = context.perfectoid(args.model)
    return CommandResult(
        {
            "model": model.to_json(),
            "r": args.r,
            "xi": str(ainf_service.xi(model)),
            "xi_r": str(ainf_service.xi_r(model, args.r)),
            "xi_tilde_r": str(ainf_service.xi_tilde_r(model, args.r)),
            "phi_xi": str(ainf_service.phi_power_xi(model, 1)),
        }
    )


def handle_theta(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    model = context.perfectoid(args.model)
    x = ainf_service.parse_element(args.x, model)
    result = {
        "x": x.to_json(),
        "theta": ainf_service.theta(x).to_json(),
        "theta_r": ainf_service.theta_r(x, args.r).to_json(),
    }
    if args.tilde:
        result["theta_tilde_r"] = ainf_service.theta_tilde_r(x, args.r).to_json()
    return CommandResult(result)


def handle_diagrams(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    model = context.perfectoid(args.model)
    samples = args.samples if args.samples is not None else context.samples
    report = ainf_service.check_fontaine_diagrams(model, args.r, samples, context.rng)
    if not report.passed:
        context.warn(f"Fontaine diagrams failed at r={args.r}")
    return CommandResult(report.to_json())


def handle_sharp(args: argparse.Namespace, context: CommandContext) -> CommandResult:
    model = context.perfectoid(args.model)
    value = ainf_service.tilt_sharp(model, args.e)
    return CommandResult({"e": args.e, "sharp": value.to_json(), "text": str(value)})


def register(subparsers) -> None:
    parser = subparsers.add_parser("ainf", help="A_inf of perfectoid models")
    actions = parser.add_subparsers(dest="action", metavar="action", required=True)

    xi = actions.add_parser("xi", help="xi, xi_r and xi~_r")
    add_model_argument(xi)
    xi.add_argument("--r", type=int, default=1)
    xi.set_defaults(handler=handle_xi)

    theta = actions.add_parser("theta", help="theta and theta_r of an element")
    add_model_argument(theta)
    theta.add_argument("--x", required=True, help="element, e.g. 'p*t^(1/2) + xi'")
    theta.add_argument("--r", type=int, default=1)
    theta.add_argument("--tilde", action="store_true", help="also theta~_r")
    theta.set_defaults(handler=handle_theta)

    diagrams = actions.add_parser("diagrams", help="R/F squares of theta_r and theta~_r on samples")
    add_model_argument(diagrams)
    diagrams.add_argument("--r", type=int, default=1)
    diagrams.add_argument("--samples", type=int)
    diagrams.set_defaults(handler=handle_diagrams)

    sharp = actions.add_parser("sharp", help="t^e -> p^e in the mixed characteristic model")
    add_model_argument(sharp)
    sharp.add_argument("--e", default="1", help="exponent a/b")
    sharp.set_defaults(handler=handle_sharp)
