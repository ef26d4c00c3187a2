"""
Logging configuration.

Logs go to stderr; stdout is reserved for result documents.
"""
import sys

from loguru import logger

_configured = False


def setup_logging(level: str = "WARNING", json_output: bool = False) -> None:
    """Setup console logging once per process."""
    global _configured

    logger.remove()
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=level.upper(),
        serialize=json_output,
    )

    if not _configured:
        logger.debug("Logging system initialized")
    _configured = True


__all__ = ["logger", "setup_logging"]
