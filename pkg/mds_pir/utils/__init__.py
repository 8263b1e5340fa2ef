from .logging import setup_logging
from .reports import render_report, write_report
from .yaml_config import check_missing_keys, load_config

__all__ = [
    # Logging
    "setup_logging",
    # Config
    "check_missing_keys",
    "load_config",
    # Reports
    "render_report",
    "write_report",
]
