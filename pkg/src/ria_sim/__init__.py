"""Retrospective interference alignment on the K-user MISO interference
channel with imperfect local delayed CSIT: protocol construction,
closed-form DoF bounds and a seeded Monte Carlo engine."""

from .bounds import REFERENCE_CURVES, crossover_epsilon, inner_bound, outer_bound, tdma_dof
from .channel import ChannelSet, CsitReport, corrupt_csit, draw_channels, perfect_csit
from .metrics import (
    RateSample,
    dof_slope,
    noise_interference_cov,
    outage_rate,
    theoretical_dof_k3,
    user_rate,
    user_rate_direct,
)
from .protocol import (
    DegenerateChannelError,
    ExtendedSystem,
    PrecoderSet,
    Schedule,
    Slot,
    assemble_extended,
    build_precoders,
    build_schedule,
    ot_precoder,
    receive_filter,
    ria_precoder,
)
from .sim import SimConfig, SlopeRecord, SweepRecord, run_sweep, run_trial, trial_generator

__version__ = "0.1.0"

__all__ = [
    "ChannelSet",
    "CsitReport",
    "DegenerateChannelError",
    "ExtendedSystem",
    "PrecoderSet",
    "RateSample",
    "REFERENCE_CURVES",
    "Schedule",
    "SimConfig",
    "SlopeRecord",
    "Slot",
    "SweepRecord",
    "assemble_extended",
    "build_precoders",
    "build_schedule",
    "corrupt_csit",
    "crossover_epsilon",
    "dof_slope",
    "draw_channels",
    "inner_bound",
    "noise_interference_cov",
    "ot_precoder",
    "outage_rate",
    "outer_bound",
    "perfect_csit",
    "receive_filter",
    "ria_precoder",
    "run_sweep",
    "run_trial",
    "tdma_dof",
    "theoretical_dof_k3",
    "trial_generator",
    "user_rate",
    "user_rate_direct",
]
