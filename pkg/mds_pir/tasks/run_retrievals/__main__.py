# tasks/run_retrievals/__main__.py

from pathlib import Path

from mds_pir.config import LOGS_DIR
from mds_pir.utils import check_missing_keys, load_config, setup_logging, write_report

# Setup logging
script_name = Path(__file__).parent.name
logger = setup_logging(script_name, LOGS_DIR)

# Import task components
from mds_pir.tasks.run_retrievals import (  # noqa: E402
    RunRetrievalsContext,
    run_retrievals,
)

logger.info("=" * 60)
logger.info("Starting run_retrievals task")
logger.info("=" * 60)

# Load config
CONFIG_PATH = Path(__file__).parent.resolve() / "config.yaml"
logger.info(f"Loading config from: {CONFIG_PATH}")
script_config = load_config(CONFIG_PATH)

# Validate config
required_keys = ["n", "t", "k"]
check_missing_keys(required_keys, script_config)

# Create context
context = RunRetrievalsContext(**script_config)

# Call main function
summary = run_retrievals(context)
write_report(summary, context.output, context.report_format)

logger.info("=" * 60)
logger.info("✓ run_retrievals task completed successfully")
logger.info("=" * 60)
