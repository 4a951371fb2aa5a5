# -*- coding: utf-8 -*-
from .gradients import lagrangian_gradients
from .kkt import KKTReport, kkt_residuals, relative_error
from .moreau import MoreauConfig, moreau_envelope, moreau_gradient
from .recorder import TraceRecorder
from .stationarity import (
    StationarityReport,
    phi_closed_form,
    prox_grad_stationarity,
    stationarity_report,
)

__all__ = [
    "lagrangian_gradients",
    "KKTReport",
    "kkt_residuals",
    "relative_error",
    "MoreauConfig",
    "moreau_envelope",
    "moreau_gradient",
    "TraceRecorder",
    "StationarityReport",
    "phi_closed_form",
    "prox_grad_stationarity",
    "stationarity_report",
]
