import os
from pathlib import Path
from typing import Optional

# Load variables from .env if present
try:
    from dotenv import load_dotenv  # type: ignore

    load_dotenv()
except Exception:
    pass


def project_root() -> Path:
    # src/gravdec/config.py => project root is 2 levels up from the package
    return Path(__file__).resolve().parents[2]


def env(key: str, default: Optional[str] = None) -> Optional[str]:
    return os.getenv(key, default)


PROJECT_ROOT = project_root()

# Earth reference experiment, geometric units (c = G = 1), meters
DEFAULT_REFERENCE_RADIUS = 6.38e6
DEFAULT_MASS_PARAMETER = 4.432e-3
DEFAULT_D_T = 1e-5
DEFAULT_D_X = 1e-3
DEFAULT_CHI = 0.01
DEFAULT_ALPHA = 1.0
DEFAULT_H_MIN = 0.0
DEFAULT_H_MAX = 8e5
DEFAULT_STEPS = 81

# Runtime knobs (overridable via env)
LOG_LEVEL = env("GRAVDEC_LOG_LEVEL", "WARNING")
OUTPUT_DIR = Path(env("GRAVDEC_OUTPUT_DIR", "."))


def default_jobs() -> int:
    try:
        return max(1, int(env("GRAVDEC_JOBS", "1") or "1"))
    except ValueError:
        return 1
