"""Logging setup and the safe-run decorator for suite entry points"""
import functools
import logging
import traceback
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

T = TypeVar('T')

LOGGER_NAME = "mspace"


def setup_logger(
    name: str = LOGGER_NAME,
    level: str = "WARNING",
    log_dir: Optional[str] = "./logs",
    max_size_mb: int = 5,
    backup_count: int = 5
) -> logging.Logger:
    """
    Configure and return a logger with a rotating file handler and a console handler.

    Library modules log through child loggers (`src.*`), so the engine's
    package logger is configured alongside the named one.

    Args:
        name: Logger name (also the log file stem)
        level: Console level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for log files; None disables the file handler
        max_size_mb: Max size of each log file in MB
        backup_count: Number of rotated files to keep

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    console_level = getattr(logging, level.upper())
    logger.setLevel(logging.DEBUG if log_dir else console_level)

    # Prevent duplicate handlers
    if logger.handlers:
        return logger

    handlers = []
    if log_dir:
        Path(log_dir).mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            Path(log_dir) / f"{name}.log",
            maxBytes=max_size_mb * 1024 * 1024,
            backupCount=backup_count
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))
        handlers.append(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter('%(levelname)s - %(message)s'))
    handlers.append(console_handler)

    engine = logging.getLogger("src")
    if not engine.handlers:
        engine.setLevel(logger.level)
        for handler in handlers:
            engine.addHandler(handler)
    for handler in handlers:
        logger.addHandler(handler)

    return logger


def safe_run(func: Callable[..., T]) -> Callable[..., Optional[T]]:
    """
    Decorator for suite entry points: log unexpected errors and return None.

    The traceback goes to DEBUG so it lands in the log file only.
    """
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any):
        logger = logging.getLogger(LOGGER_NAME)
        try:
            return func(*args, **kwargs)
        except Exception as e:
            logger.error(f"Error in {func.__name__}: {type(e).__name__}: {e}")
            logger.debug(traceback.format_exc())
            return None
    return wrapper
