# -*- coding: utf-8 -*-
from .hashing import fingerprint
from .logs import configure_logging
from .seeding import SolverStreams, solver_streams
from .settings import Settings, get_settings

__all__ = [
    "fingerprint",
    "configure_logging",
    "SolverStreams",
    "solver_streams",
    "Settings",
    "get_settings",
]
