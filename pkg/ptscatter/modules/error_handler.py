import io
import logging
import sys
import traceback

import click
import pretty_errors

from ptscatter import LOGGER
from ptscatter.error import PtScatterError

pretty_errors.mono()


def render_error(error: BaseException) -> str:
    try:
        stringio = io.StringIO()
        pretty_errors.output_stderr = stringio
        pretty_errors.excepthook(type(error), error, error.__traceback__)
        pretty_errors.output_stderr = sys.stderr
        pretty_error = stringio.getvalue()
        stringio.close()
    except Exception:
        pretty_error = "".join(traceback.format_exception(type(error), error, error.__traceback__))
    return pretty_error


def error_callback(error: PtScatterError) -> int:
    """Report ``error`` on stderr and in the log, return its exit code."""
    kind = "configuration" if error.exit_code == 2 else "numerical"
    click.echo(f"ptscatter: {kind} error: {error.message}", err=True)
    LOGGER.error("%s: %s", type(error).__name__, error.message)
    if LOGGER.isEnabledFor(logging.DEBUG):
        LOGGER.debug("%s", render_error(error))
    return error.exit_code
