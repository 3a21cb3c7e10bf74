import logging
import sys
import traceback
from functools import wraps
from typing import Callable, Optional, TextIO

from game_core.errors import (
    ResourceBoundError,
    exit_code_for,
    format_error_message,
    is_input_error,
)

logger = logging.getLogger(__name__)


def handle_error(error: Exception, stream: Optional[TextIO] = None) -> int:
    """Report *error* as a one-line diagnostic and return its exit code."""
    if isinstance(error, ResourceBoundError):
        logger.warning(f"Resource bound exceeded: {error}")
    elif is_input_error(error):
        logger.error(f"Invalid input: {error}")
    else:
        logger.error(f"Unexpected error: {error}")
        logger.error(traceback.format_exc())

    print(f"error: {format_error_message(error)}", file=stream or sys.stderr)
    return exit_code_for(error)


def guarded(command: Callable[..., int]) -> Callable[..., int]:
    """Decorator turning any exception raised by a command into an exit code."""

    @wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)
        except Exception as e:
            return handle_error(e)

    return wrapper
