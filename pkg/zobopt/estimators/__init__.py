# -*- coding: utf-8 -*-
from .blocks import BlockSample, sample_block
from .finite_diff import (
    DIRECTION_LAWS,
    GradientEstimate,
    bcge,
    cge_full,
    lagrangian,
    rge,
    sample_direction,
    smoothed_bcge,
)
from .radius import NOISE_FREE_PRESET, NOISY_PRESET, RadiusSchedule

__all__ = [
    "BlockSample",
    "sample_block",
    "DIRECTION_LAWS",
    "GradientEstimate",
    "bcge",
    "cge_full",
    "lagrangian",
    "rge",
    "sample_direction",
    "smoothed_bcge",
    "NOISE_FREE_PRESET",
    "NOISY_PRESET",
    "RadiusSchedule",
]
