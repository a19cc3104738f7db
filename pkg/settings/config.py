import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
CURRENT_DIR = Path(os.path.dirname(os.path.abspath(__file__))).parent
load_dotenv((CURRENT_DIR / '.env').as_posix())

# Output and logging locations
OUTPUT_DIR = Path(os.getenv('TPOT_OUTPUT_DIR', CURRENT_DIR / 'output'))
LOG_DIR = Path(os.getenv('TPOT_LOG_DIR', CURRENT_DIR / 'logs'))
LOG_LEVEL = os.getenv('TPOT_LOG_LEVEL', 'INFO')

# Solver defaults
NUM_WORKERS = int(os.getenv('TPOT_NUM_WORKERS', 2))
EXACT_OT_CAP = int(os.getenv('TPOT_EXACT_OT_CAP', 512))  # max rows/cols for exact_ot
BANDWIDTH_RULE = os.getenv('TPOT_BANDWIDTH', 'paper')  # 'paper' (alias 'inverse_mean') or 'median'


def output_dir_override() -> Path | None:
    """Return the TPOT_OUTPUT_DIR directory if the variable is set, else None."""
    value = os.getenv('TPOT_OUTPUT_DIR')
    return Path(value) if value else None
