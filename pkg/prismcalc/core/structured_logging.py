"""
Structured event logging for computations.

Each command binds its context (command name, seed, model) once and the
services emit named events with exact parameters as fields.
"""

import logging
import sys
from typing import Any, Dict

import structlog

logging.basicConfig(format="%(message)s", stream=sys.stderr, level=logging.WARNING)

structlog.configure(
    processors=[
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
        structlog.processors.JSONRenderer(),
    ],
    context_class=dict,
    logger_factory=structlog.stdlib.LoggerFactory(),
    wrapper_class=structlog.stdlib.BoundLogger,
    cache_logger_on_first_use=True,
)


class ComputationLogger:
    """Structured logger carrying computation context."""

    def __init__(self, name: str = "prismcalc"):
        self.name = name
        self.logger = structlog.get_logger(name)
        self._context: Dict[str, Any] = {}

    def bind_context(self, **kwargs) -> "ComputationLogger":
        """Bind additional context to the logger."""
        new_logger = ComputationLogger(self.name)
        new_logger.logger = self.logger.bind(**kwargs)
        new_logger._context = {**self._context, **kwargs}
        return new_logger

    def event(self, event_type: str, **kwargs):
        """Log a computation event at info level."""
        self.logger.info(event_type, **self._get_context(event_type=event_type, **kwargs))

    def info(self, message: str, **kwargs):
        self.logger.info(message, **self._get_context(**kwargs))

    def warning(self, message: str, **kwargs):
        self.logger.warning(message, **self._get_context(**kwargs))

    def debug(self, message: str, **kwargs):
        self.logger.debug(message, **self._get_context(**kwargs))

    def _get_context(self, **kwargs) -> Dict[str, Any]:
        context = {**self._context, **kwargs}
        return {k: _loggable(v) for k, v in context.items() if v is not None}


def _loggable(value: Any) -> Any:
    # big integers are logged as strings so JSON consumers stay exact
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2**53:
        return str(value)
    return value


def set_log_level(level: str) -> None:
    """Apply the configured level to the stdlib logger structlog writes through."""
    logging.getLogger().setLevel(level.upper())


# Per-module loggers
witt_logger = ComputationLogger("prismcalc.witt")
ainf_logger = ComputationLogger("prismcalc.ainf")
nygaard_logger = ComputationLogger("prismcalc.nygaard")
graded_logger = ComputationLogger("prismcalc.graded")
complex_logger = ComputationLogger("prismcalc.complexes")
drw_logger = ComputationLogger("prismcalc.drw")


def get_logger(name: str) -> ComputationLogger:
    """Get a structured logger for a component."""
    return ComputationLogger(f"prismcalc.{name}")
