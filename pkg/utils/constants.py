"""
Constants for the constamax workbench
"""
from pathlib import Path

# File paths
CONFIG_DIR = Path.home() / ".config" / "constamax"
SETTINGS_FILE = CONFIG_DIR / "settings.json"
LOG_FILE = CONFIG_DIR / "constamax.log"
MODULUS_TABLE_FILE = Path(__file__).resolve().parent.parent / "core" / "data" / "moduli.txt"

# Environment
BUDGET_ENV_VAR = "CONSTAMAX_BUDGET"

# Limits (field operations / element counts)
DEFAULT_BUDGET = 10**9
FIELD_ORDER_CEILING = 2**20

# Column subsets checked per vectorized elimination batch
SUBSET_CHUNK = 4096

# Codewords materialized per enumeration batch
ENUMERATION_CHUNK = 8192

# Free distance search depth = memory + margin
DEFAULT_SEARCH_DEPTH_MARGIN = 3

# Output formats
OUTPUT_FORMATS = ("json", "csv", "text")
DEFAULT_OUTPUT_FORMAT = "text"

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TABLE_MISMATCH = 3

# Application info
APP_NAME = "constamax"
APP_VERSION = "1.0"
