"""
Logging utility for rankforge.
Provides structured logging for traceability; console output goes to stderr
so that command output on stdout stays deterministic.
"""
import logging
import sys
from typing import Optional


def setup_logger(name: str, log_file: Optional[str] = None, level: str = "WARNING") -> logging.Logger:
    """Setup and configure logger. Safe to call repeatedly."""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))

    if getattr(logger, "_rankforge_configured", False):
        return logger

    # Formatter
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # File handler
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger._rankforge_configured = True
    return logger
