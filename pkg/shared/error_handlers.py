"""
Centralized error handling for the management commands.
Provides consistent exit codes and logging across all subcommands.
"""

import logging

from django.core.exceptions import ValidationError
from django.core.management.base import CommandError

from shared.exceptions import EXIT_NUMERIC_FAILURE, EXIT_USAGE, LabError

logger = logging.getLogger(__name__)


def handle_lab_error(exc, log_message=None):
    """
    Convert a LabError into a CommandError carrying the error's exit code.

    Args:
        exc: The LabError raised by a library operation
        log_message: Internal message for logging (optional)

    Returns:
        CommandError to be raised by the caller
    """
    if exc.exit_code == EXIT_USAGE:
        logger.info("Rejected input (%s): %s", exc.default_code, log_message or exc.detail)
    else:
        logger.error("Numeric failure (%s): %s", exc.default_code, log_message or exc.detail)
    return CommandError(f"{exc.default_code}: {exc.detail}", returncode=exc.exit_code)


def handle_validation_error(exc, log_message=None):
    """
    Convert a Django ValidationError raised while parsing options.

    Args:
        exc: The ValidationError
        log_message: Internal message for logging (optional)

    Returns:
        CommandError with the usage exit code
    """
    if log_message:
        logger.info("Validation error: %s", log_message)
    messages = "; ".join(exc.messages)
    return CommandError(f"validation_error: {messages}", returncode=EXIT_USAGE)


def handle_unexpected_error(exc, command_name):
    """
    Log an unexpected exception and convert it.

    Args:
        exc: Any exception that is neither LabError nor ValidationError
        command_name: Name of the command that failed

    Returns:
        CommandError with the numeric-failure exit code
    """
    logger.error("Unhandled exception in %s", command_name, exc_info=exc)
    return CommandError("server_error: an internal error occurred", returncode=EXIT_NUMERIC_FAILURE)


def convert_exception(exc, command_name):
    """Dispatch to the matching handler."""
    if isinstance(exc, LabError):
        return handle_lab_error(exc)
    if isinstance(exc, ValidationError):
        return handle_validation_error(exc)
    return handle_unexpected_error(exc, command_name)
