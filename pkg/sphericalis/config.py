"""
Configuration
Environment driven settings for the sphericalis engine.
"""
import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

PACKAGE_ROOT = Path(__file__).resolve().parent.parent


class Settings:
    def __init__(self):
        self.prec = int(os.getenv("SPHERICALIS_PREC", "24"))
        self.weyl_cap = int(os.getenv("SPHERICALIS_WEYL_CAP", "1000000"))
        self.theta_cap = int(os.getenv("SPHERICALIS_THETA_CAP", "20"))
        self.oracle_tol = float(os.getenv("SPHERICALIS_ORACLE_TOL", "1e-9"))
        self.grid_cap = int(os.getenv("SPHERICALIS_GRID_CAP", "10000000"))
        self.log_level = os.getenv("SPHERICALIS_LOG_LEVEL", "WARNING").upper()
        self.fixtures_dir = Path(os.getenv("SPHERICALIS_FIXTURES_DIR", str(PACKAGE_ROOT / "fixtures")))
        self.paths_dir = Path(os.getenv("SPHERICALIS_PATHS_DIR", str(PACKAGE_ROOT / "paths")))

    def __repr__(self):
        return (
            f"Settings(prec={self.prec}, weyl_cap={self.weyl_cap}, theta_cap={self.theta_cap}, "
            f"oracle_tol={self.oracle_tol}, grid_cap={self.grid_cap})"
        )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Shared settings instance (call get_settings.cache_clear() after changing the environment)"""
    return Settings()
