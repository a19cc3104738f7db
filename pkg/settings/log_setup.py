import logging
import os
from datetime import datetime as dt
from pathlib import Path
from typing import Optional

from .config import LOG_DIR, LOG_LEVEL


def setup_logger(name: str, log_dir: Optional[Path] = None, to_file: bool = True) -> logging.Logger:
    """
    Set up a logger for one command or worker.

    A timestamped file handler goes under the log directory and a console
    handler goes to stderr. Calling it twice for the same name replaces the
    handlers rather than stacking them.

    Args:
        name: Logger name, usually the command or class name
        log_dir: Directory for the log file (default: TPOT_LOG_DIR)
        to_file: Set False to log to the console only

    Returns:
        The configured logger
    """
    worker_id = os.getpid()
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, LOG_LEVEL.upper(), logging.INFO))

    # Prevent duplicate handlers
    if logger.handlers:
        logger.handlers.clear()

    if to_file:
        log_dir = Path(log_dir) if log_dir is not None else LOG_DIR
        os.makedirs(log_dir, exist_ok=True)
        timestamp = dt.now().strftime("%m-%d-%Y_%H-%M")
        log_file = log_dir / f'{name[:8]}_{timestamp}_{worker_id}.log'

        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(
            logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        )
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(
        logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
    )
    logger.addHandler(console_handler)

    # Library modules log under their own names; route them here as well
    for package in ('geometry', 'persistence', 'topo_network', 'ot_core',
                    'tpot_solver', 'geodesics', 'analysis', 'datasets', 'workers'):
        package_logger = logging.getLogger(package)
        package_logger.setLevel(logger.level)
        package_logger.handlers = list(logger.handlers)
        package_logger.propagate = False

    return logger
