"""
Configuration file for rankforge.
Contains environment-driven settings, numeric tolerances and simulation defaults.
"""
import os
from dotenv import load_dotenv

load_dotenv()


def env_flag(name: str) -> bool:
    """Unset, empty, 0, false, no and off (any case) read as False; anything else as True."""
    return os.getenv(name, "").strip().lower() not in ("", "0", "false", "no", "off")


# Output Configuration
NO_COLOR = env_flag("RANKFORGE_NO_COLOR")
FLOAT_DECIMALS = 3  # matches the published square-root columns (e.g. 6.049)
TEXT_WIDTH = 100

# Numeric Configuration
# Two floating scores a, b are tied when |a - b| <= FLOAT_TOLERANCE * max(1, |a|)
FLOAT_TOLERANCE = 1e-9

# Competition Defaults
DEFAULT_CUT = 8  # Tokyo 2020 preliminaries: 20 -> 8
EMBEDDED_DATASETS = [
    "men-prelims",
    "men-finals",
    "women-prelims",
    "women-finals",
]

# Simulation Configuration
DEFAULT_TRIALS = 100000
DEFAULT_SEED = 42
SIM_WORKERS = int(os.getenv("RANKFORGE_SIM_WORKERS", "1"))
SIM_CHUNK_SIZE = 5000

# Logging Configuration
LOG_LEVEL = os.getenv("RANKFORGE_LOG_LEVEL", "WARNING")
LOG_FILE = os.getenv("RANKFORGE_LOG_FILE") or None
