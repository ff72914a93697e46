from __future__ import annotations

import os
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field


class DimCaps(BaseModel):
    subspaces: int = 4
    algebra: int = 12
    el: int = 3
    pend: int = 2
    level: int = 3
    levels: int = 6
    finverse: int = 2
    hom_candidates: int = 250_000


class RunConfig(BaseModel):
    seed: int = 1729
    trials: int = Field(default=1000, gt=0)
    threads: int = Field(default=1, gt=0)
    scalar_bound: int = 7
    dim_caps: DimCaps = Field(default_factory=DimCaps)


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value == "":
        return None
    return int(value)


def load_config(**overrides: Any) -> RunConfig:
    """
    Build the effective RunConfig: defaults, then .env / environment, then explicit overrides.
    """
    load_dotenv()
    values: dict[str, Any] = {}
    for key, env in (("seed", "LISA_SEED"), ("trials", "LISA_TRIALS"), ("threads", "LISA_THREADS")):
        found = _env_int(env)
        if found is not None:
            values[key] = found
    dim_cap = overrides.pop("dim_cap", None)
    values.update({k: v for k, v in overrides.items() if v is not None})
    config = RunConfig(**values)
    if dim_cap is not None:
        config.dim_caps.el = dim_cap
        config.dim_caps.subspaces = max(config.dim_caps.subspaces, dim_cap)
    return config
