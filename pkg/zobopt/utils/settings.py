# -*- coding: utf-8 -*-
from __future__ import annotations

import os
from dataclasses import dataclass

from dotenv import load_dotenv

JOBS_DEFAULT = 1
OUT_DIR_DEFAULT = "out"
LOG_LEVEL_DEFAULT = "INFO"


@dataclass(frozen=True)
class Settings:
    jobs: int = JOBS_DEFAULT
    out_dir: str = OUT_DIR_DEFAULT
    log_level: str = LOG_LEVEL_DEFAULT


def get_settings(load_env: bool = True) -> Settings:
    """
    Lê as configurações de processo do ambiente (.env incluído).
    Valores inválidos caem no padrão, como o fallback de embeddings.
    """
    if load_env:
        load_dotenv()

    try:
        jobs = max(1, int(os.getenv("ZOBOPT_JOBS", JOBS_DEFAULT)))
    except ValueError:
        jobs = JOBS_DEFAULT

    return Settings(
        jobs=jobs,
        out_dir=os.getenv("ZOBOPT_OUT_DIR") or OUT_DIR_DEFAULT,
        log_level=(os.getenv("ZOBOPT_LOG_LEVEL") or LOG_LEVEL_DEFAULT).upper(),
    )
