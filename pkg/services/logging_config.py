# -*- coding: utf-8 -*-
"""
Logging configuration for the WARPSOL toolkit.
Provides centralized logging setup with file and console handlers.
"""

import logging
import logging.handlers
import os
from datetime import datetime
from typing import Optional


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    console_level: Optional[str] = None,
    log_dir: Optional[str] = None,
    max_file_size: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5
) -> logging.Logger:
    """
    Set up logging for the WARPSOL toolkit.

    Args:
        log_level: Logger level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file. If None, uses a dated file in log_dir
        console_level: Console handler level; defaults to log_level
        log_dir: Directory for log files; defaults to ./logs
        max_file_size: Maximum size of log file before rotation (bytes)
        backup_count: Number of backup log files to keep

    Returns:
        Configured logger instance
    """
    if log_dir is None:
        log_dir = os.path.join(os.getcwd(), "logs")

    if log_file is None:
        timestamp = datetime.now().strftime("%Y%m%d")
        log_file = os.path.join(log_dir, f"warpsol_{timestamp}.log")

    logger = logging.getLogger("warpsol")
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()

    formatter = logging.Formatter(
        fmt='%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # File handler with rotation
    try:
        os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=max_file_size,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(getattr(logging, log_level.upper()))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    except (OSError, IOError) as e:
        logger.addHandler(logging.NullHandler())
        logging.getLogger(__name__).warning(f"Could not create file handler for logging: {e}")

    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, (console_level or log_level).upper()))
    console_handler.setFormatter(logging.Formatter(fmt='%(levelname)s - %(name)s - %(message)s'))
    logger.addHandler(console_handler)

    logger.debug(f"Logging initialized - Level: {log_level}, File: {log_file}")

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a specific module.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger instance
    """
    if name.startswith("services."):
        name = name[len("services."):]
    return logging.getLogger(f"warpsol.{name}")
