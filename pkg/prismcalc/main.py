#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
prism command line entry point.

Every invocation runs one command and writes one document to stdout (or to
--output): {command, config, result, warnings} on success, {error} on a
validation failure. Exit codes are 0 on success, 2 on validation failures
and 1 on unexpected errors.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from .commands import COMMANDS
from .commands.context import CommandContext, join_range_flags
from .config import settings
from .core.error_handling import EXIT_OK, create_error_response, exit_code_for
from .core.logging import setup_logging
from .core.structured_logging import get_logger, set_log_level
from .core.validators import OUTPUT_FORMATS, load_config
from .services.report import render, render_json


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prism",
        description="Exact computations with Nygaard-filtered prismatic cohomology of perfectoid rings.",
    )
    parser.add_argument("--format", choices=OUTPUT_FORMATS, help="json (default) or markdown")
    parser.add_argument("--config", help="INI run configuration")
    parser.add_argument("--seed", type=int, help="seed for sampled property checks")
    parser.add_argument("--output", help="write the document to this file instead of stdout")
    parser.add_argument("--log-level", default=None, help="loguru level for stderr logs")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run one command and emit its document; returns the exit code."""
    argv = join_range_flags(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors
        return int(exc.code or 0)

    level = args.log_level or settings.log_level
    setup_logging(level, settings.log_json)
    set_log_level(level)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    try:
        config = load_config(args.config)
        context = CommandContext.create(args, config)
        events = get_logger("cli").bind_context(command=args.command, seed=context.seed)
        events.event("command_started", action=getattr(args, "action", None))
        outcome = args.handler(args, context)
        document = {
            "command": args.command if not getattr(args, "action", None) else f"{args.command} {args.action}",
            "config": context.describe(args),
            "result": outcome.result,
            "warnings": context.warnings,
        }
        text = render(document, context.format, outcome.table)
        path = args.output or config.output.path
    except Exception as exc:
        code = exit_code_for(exc)
        if code != 2:
            logger.exception(f"{args.command} failed")
        sys.stdout.write(render_json(create_error_response(exc)))
        return code

    _emit(text, path)
    events.event("command_finished", warnings=len(context.warnings))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
