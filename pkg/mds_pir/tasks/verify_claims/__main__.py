# tasks/verify_claims/__main__.py

from pathlib import Path
import sys

from mds_pir.config import LOGS_DIR
from mds_pir.utils import check_missing_keys, load_config, setup_logging, write_report

# Setup logging
script_name = Path(__file__).parent.name
logger = setup_logging(script_name, LOGS_DIR)

# Import task components
from mds_pir.tasks.verify_claims import (  # noqa: E402
    VerifyClaimsContext,
    verify_claims,
)

logger.info("=" * 60)
logger.info("Starting verify_claims task")
logger.info("=" * 60)

# Load config
CONFIG_PATH = Path(__file__).parent.resolve() / "config.yaml"
logger.info(f"Loading config from: {CONFIG_PATH}")
script_config = load_config(CONFIG_PATH)

# Validate config
required_keys = ["n", "t", "k"]
check_missing_keys(required_keys, script_config)

# Create context
context = VerifyClaimsContext(**script_config)

# Call main function
reports = verify_claims(context)
write_report([report.as_dict() for report in reports], context.output, context.report_format)

if not all(report.passed for report in reports):
    logger.error("✗ verify_claims task finished with failed claims")
    sys.exit(1)

logger.info("=" * 60)
logger.info("✓ verify_claims task completed successfully")
logger.info("=" * 60)
