"""
Logging setup: one rich handler on the package logger
"""

import logging

from rich.console import Console
from rich.logging import RichHandler

PACKAGE_LOGGER = "causal_relativity"


def configure_logging(verbose: bool = False) -> logging.Logger:
    """Attach a stderr RichHandler to the package logger (idempotent)"""
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)

    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)

    return logger
