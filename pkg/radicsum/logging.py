"""
radicsum.logging
================

Configures logging for radicsum. Log records and progress displays go to the
error stream so that reports written to standard output stay machine-readable.
"""
import logging
import os

from rich.console import Console
from rich.logging import RichHandler

CONSOLE = Console(stderr=True)

FORMAT = "%(message)s"
logging.basicConfig(
    level=os.environ.get("RADICSUM_LOG_LEVEL", "INFO").upper(),
    format=FORMAT,
    datefmt="[%X]",
    handlers=[RichHandler(console=CONSOLE, rich_tracebacks=True)]
)


def set_verbosity(verbose: int) -> None:
    """
    Lower the log level of the radicsum loggers.

    Args:
        verbose: The number of '-v' flags passed on the command line. Any
            positive value enables debug output.
    """
    if verbose > 0:
        logging.getLogger("radicsum").setLevel(logging.DEBUG)
