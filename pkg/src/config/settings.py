"""Application settings and environment variables."""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Base directory
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# Where runs land when neither the config nor --out names a directory
DEFAULT_OUTPUT_DIR = Path(os.getenv("PGC_OUTPUT_DIR", BASE_DIR / "runs" / "desk"))

# Thread pool size for per-image work (dataset generation, scoring)
MAX_WORKERS = int(os.getenv("PGC_MAX_WORKERS", "4"))

# Set PGC_PROGRESS=0 to silence tqdm progress bars
SHOW_PROGRESS = os.getenv("PGC_PROGRESS", "1") != "0"

# Shipped experiment presets
CONFIG_DIR = BASE_DIR / "configs"
