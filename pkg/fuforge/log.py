"""
Logging setup.

Status lines keep the `LEVEL: message` shape and go to stderr, so stdout only
ever carries the report.
"""
import logging
import sys

LOG_FORMAT = "%(levelname)s: %(message)s"


def setup_logging(level: str = "INFO") -> None:
    """
    Configures the root `fuforge` logger once.

    Args:
        level: A logging level name such as "DEBUG" or "WARNING".
    """
    logger = logging.getLogger("fuforge")
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    if not any(getattr(h, "_fuforge", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._fuforge = True
        logger.addHandler(handler)
    logger.propagate = False
