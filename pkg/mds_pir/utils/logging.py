# utils/logging.py
import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

LOG_FORMAT = "%(asctime)s - {command} - %(name)s - %(levelname)s - %(message)s"
MAX_LOG_BYTES = 10 * 1024 * 1024  # 10MB
BACKUP_COUNT = 5


def setup_logging(command: str, log_dir: Path, verbose: bool = False) -> logging.Logger:
    """
    Send package records to ``<log_dir>/<command>.log`` (DEBUG and up) and to stderr (INFO and
    up).

    Records are tagged with the command so that logs of concurrent runs can be told apart.
    stdout is left to the reports.

    Args:
        command: Task directory of the command (e.g. "verify_claims"), names the log file
        log_dir: Directory where the log file is created
        verbose: Also show DEBUG records on stderr

    Returns:
        The ``mds_pir.<command>`` logger

    Example:
        from mds_pir.config import LOGS_DIR
        from mds_pir.utils import setup_logging

        logger = setup_logging("run_retrievals", LOGS_DIR)
        logger.info("Command started")
    """
    log_dir.mkdir(parents=True, exist_ok=True)
    log_path = log_dir / f"{command}.log"
    formatter = logging.Formatter(LOG_FORMAT.format(command=command))

    file_handler = RotatingFileHandler(
        log_path, maxBytes=MAX_LOG_BYTES, backupCount=BACKUP_COUNT, encoding="utf-8"
    )
    file_handler.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler()  # stderr
    console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)

    for handler in (file_handler, console_handler):
        handler.setFormatter(formatter)

    # third-party loggers (numba under galois) stay at INFO
    logging.basicConfig(
        level=logging.INFO,
        handlers=[file_handler, console_handler],
        force=True,  # a second command in the same process gets its own file
    )
    logging.getLogger("mds_pir").setLevel(logging.DEBUG)

    logger = logging.getLogger(f"mds_pir.{command}")
    console_level = logging.getLevelName(console_handler.level)
    logger.debug(f"Logging to {log_path} (console level {console_level})")
    return logger
