# tasks/sweep_params/__main__.py

from pathlib import Path
import sys

from mds_pir.config import LOGS_DIR
from mds_pir.utils import load_config, setup_logging, write_report

# Setup logging
script_name = Path(__file__).parent.name
logger = setup_logging(script_name, LOGS_DIR)

# Import task components
from mds_pir.tasks.sweep_params import (  # noqa: E402
    SweepParamsContext,
    sweep_params,
)

logger.info("=" * 60)
logger.info("Starting sweep_params task")
logger.info("=" * 60)

# Load config
CONFIG_PATH = Path(__file__).parent.resolve() / "config.yaml"
logger.info(f"Loading config from: {CONFIG_PATH}")
script_config = load_config(CONFIG_PATH)

# Create context
context = SweepParamsContext(**script_config)

# Call main function
records = sweep_params(context)
write_report(records, context.output, context.report_format)

if not all(record["pass"] for record in records):
    logger.error("✗ sweep_params task finished with failed claims")
    sys.exit(1)

logger.info("=" * 60)
logger.info("✓ sweep_params task completed successfully")
logger.info("=" * 60)
