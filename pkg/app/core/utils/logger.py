import logging

from rich.console import Console
from rich.logging import RichHandler

from app.config import settings

# stdout carries machine-readable output only
stderr_console = Console(stderr=True)


def setup_logging(level: str | int | None = None) -> None:
    """ Install a single rich handler on the package logger. Safe to call more than once. """
    logger = logging.getLogger("app")
    logger.setLevel(level or settings.LOG_LEVEL)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(console=stderr_console, show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
