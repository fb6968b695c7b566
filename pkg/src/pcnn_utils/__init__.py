from .config import (
    ExperimentConfig, load_config, validate_environment,
    get_out_dir, get_log_level, get_fs,
)
from .io import save_json, load_json, save_csv, save_text, table_to_csv, join
from .testing import validate
from . import debug

__all__ = [
    # Config
    'ExperimentConfig', 'load_config', 'validate_environment',
    'get_out_dir', 'get_log_level', 'get_fs',
    # I/O
    'save_json', 'load_json', 'save_csv', 'save_text', 'table_to_csv', 'join',
    # Other
    'validate', 'debug',
]
