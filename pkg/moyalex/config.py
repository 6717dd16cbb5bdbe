"""Configuration settings loaded from environment."""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

DATA_DIR = Path(__file__).parent / "data"


class Settings:
    """Runtime settings from environment variables."""

    def __init__(self):
        override = os.getenv("MOYALEX_WEIGHT_TABLE", "")
        self.weight_table_override = Path(override) if override else None
        self.log_level = os.getenv("MOYALEX_LOG_LEVEL", "WARNING").upper()
        self.jobs = int(os.getenv("MOYALEX_JOBS", "1"))
        self.state_limit = int(os.getenv("MOYALEX_STATE_LIMIT", "5000000"))
        self.rewrite_max_terms = int(os.getenv("MOYALEX_REWRITE_MAX_TERMS", "20000"))

    @property
    def has_weight_override(self) -> bool:
        """Check if an alternative weight table was requested."""
        return self.weight_table_override is not None

    @property
    def weight_table_path(self) -> Path:
        """Weight table in effect: the override if set, else the shipped resource."""
        if self.weight_table_override is not None:
            return self.weight_table_override
        return DATA_DIR / "weights_v1.json"

    @property
    def weight_table_exists(self) -> bool:
        """Check if the weight table in effect exists on disk."""
        return self.weight_table_path.exists()


# Global settings instance
settings = Settings()
