# mds_pir/config.py

import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

if os.getenv("CI"):  # GitHub Actions sets CI=true
    LOCAL_DIR = Path(".").resolve()
else:
    LOCAL_DIR = Path(os.getenv("MDS_PIR_LOCAL_DIR", ".")).resolve()

REPORTS_FOLDER = Path(os.getenv("MDS_PIR_REPORTS_FOLDER", "reports"))

# Local paths
REPORTS_DIR = LOCAL_DIR / REPORTS_FOLDER
LOGS_DIR = REPORTS_DIR / "logs"

# Validate local paths exist
for path_name, path in [("MDS_PIR_LOCAL_DIR", LOCAL_DIR)]:
    if not path.exists():
        raise ValueError(f"{path_name} path '{path}' from .env does not exist.")

# Field and enumeration defaults
DEFAULT_FIELD_ORDER = int(os.getenv("MDS_PIR_FIELD_ORDER", "256"))
ENUMERATION_CAP = int(os.getenv("MDS_PIR_ENUMERATION_CAP", str(10**6)))

# Database node endpoints for wire mode; port 0 asks the OS for ephemeral ports
NODE_HOST = os.getenv("MDS_PIR_NODE_HOST", "127.0.0.1")
NODE_BASE_PORT = int(os.getenv("MDS_PIR_NODE_BASE_PORT", "0"))
