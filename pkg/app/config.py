import os
from pydantic_settings import BaseSettings
from typing import Optional

class Settings(BaseSettings):
    # Environment
    ENV: str = "development"
    DEBUG: bool = False

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "standard"  # standard | json
    LOG_FILE: Optional[str] = None

    # Graph limits
    MAX_VERTICES: int = 64  # one machine word per adjacency row
    ISOMORPHISM_MAX_VERTICES: int = 12
    PERFECT_MAX_VERTICES: int = 20
    MAIN_ANGLE_MAX_VERTICES: int = 32

    # Numeric tolerances
    GROUPING_TOLERANCE: float = 1e-7
    EIGEN_MATCH_TOLERANCE: float = 1e-9
    POSITIVE_EIGENVALUE_THRESHOLD: float = 1e-9

    # Cospectral search
    LABELED_MAX_VERTICES: int = 7
    LONG_RUN_MAX_VERTICES: int = 8
    SEARCH_WORKERS: int = 0  # 0 = one worker per CPU
    SEARCH_BATCH_SIZE: int = 65536

    class Config:
        env_file = ".env"
        extra = "ignore"

    @property
    def worker_count(self) -> int:
        if self.SEARCH_WORKERS > 0:
            return self.SEARCH_WORKERS
        return os.cpu_count() or 1

settings = Settings()
