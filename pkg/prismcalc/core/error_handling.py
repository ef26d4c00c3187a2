"""
Error rendering for the command line front end.
"""

import traceback
from typing import Any, Dict

from loguru import logger
from pydantic import ValidationError

from .exceptions import ConfigError, PrismError

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2


def create_error_response(exc: Exception) -> Dict[str, Any]:
    """Create standardized error document."""
    if isinstance(exc, PrismError):
        code, message, details = exc.error_code, exc.message, exc.details
    elif isinstance(exc, ValidationError):
        code = ConfigError.error_code
        message = "Configuration validation failed"
        details = {
            "errors": [
                {"field": ".".join(str(part) for part in err["loc"]), "message": err["msg"]}
                for err in exc.errors()
            ]
        }
    else:
        code, message, details = "INTERNAL_ERROR", str(exc), {"type": type(exc).__name__}

    return {
        "error": {
            "code": code,
            "message": message,
            "details": details,
        }
    }


def exit_code_for(exc: Exception) -> int:
    """Map an exception to the process exit code."""
    if isinstance(exc, (PrismError, ValidationError)):
        logger.warning(f"Validation failure: {exc}")
        return EXIT_VALIDATION

    logger.error(f"Unexpected error: {exc}")
    logger.debug(traceback.format_exc())
    return EXIT_INTERNAL
