import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


class WorkbenchSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int = 20240611
    random_models: int = Field(default=20, ge=20)
    ns_sweep_max: int = Field(default=12, ge=2)
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "WorkbenchSettings":
        """Build settings from the environment (and a .env file, if present)"""
        settings = cls(
            seed=int(os.getenv("SEED", cls.model_fields["seed"].default)),
            random_models=int(os.getenv("ELLIPTIC_RANDOM_MODELS", cls.model_fields["random_models"].default)),
            ns_sweep_max=int(os.getenv("NS_SWEEP_MAX", cls.model_fields["ns_sweep_max"].default)),
            log_level=os.getenv("LOG_LEVEL", cls.model_fields["log_level"].default).upper(),
        )
        logger.debug(f"Loaded settings: {settings.model_dump()}")
        return settings
