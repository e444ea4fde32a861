"""
Constants, settings, serialization and system helpers
"""
from utils.constants import *
from utils.serialization import to_csv, to_json, to_text
from utils.settings import Settings, load_settings
from utils.system_utils import current_memory_mb, default_worker_count, peak_memory_mb

__all__ = [
    # Constants
    'APP_NAME',
    'APP_VERSION',
    'CONFIG_DIR',
    'SETTINGS_FILE',
    'LOG_FILE',
    'MODULUS_TABLE_FILE',
    'BUDGET_ENV_VAR',
    'DEFAULT_BUDGET',
    'FIELD_ORDER_CEILING',
    'DEFAULT_SEARCH_DEPTH_MARGIN',
    'OUTPUT_FORMATS',
    'DEFAULT_OUTPUT_FORMAT',
    'EXIT_OK',
    'EXIT_USAGE',
    'EXIT_TABLE_MISMATCH',

    # Settings
    'Settings',
    'load_settings',

    # Serialization
    'to_csv',
    'to_json',
    'to_text',

    # System utils
    'current_memory_mb',
    'default_worker_count',
    'peak_memory_mb',
]
