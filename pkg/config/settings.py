import os

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Logging (records go to stderr, reports to stdout)
    LOG_LEVEL: str = "WARNING"

    # Equation-system bounds
    MAX_LOGIC_VARS: int = 24
    MAX_POWERSET_VERTICES: int = 4096

    # Defaults of the `random` command
    RANDOM_PLAYERS: int = 2
    RANDOM_DEPTH: int = 3
    RANDOM_BRANCHING: int = 2
    RANDOM_COUNT: int = 1

    model_config = {
        "env_file": os.path.join(os.path.dirname(__file__), "..", ".env"),
        "extra": "ignore",
    }
