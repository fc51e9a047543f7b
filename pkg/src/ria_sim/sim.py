"""Monte Carlo engine for the alignment scheme and the TDMA baseline.

Trials are mutually independent and deterministically seeded: trial t of
a run with master seed S draws its channels from a generator seeded by
the tuple (S, stream, t), with stream 0 for the fading realization and
stream 1 for the feedback errors. Both schemes in a trial reuse the same
fading draw (common random numbers), and the feedback-error stream keyed
only by (S, t) keeps the error directions common across the epsilon and
SNR grid, so sweep curves are smooth and results do not depend on
execution order or on the worker count.

The worker count is read from the RIA_SIM_THREADS environment variable
(default 1). Aggregation always reduces in trial-index order, so the
output is bit-identical for any worker count.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .channel import corrupt_csit, draw_channels, perfect_csit
from .metrics import RateSample, dof_slope, noise_interference_cov, outage_rate, user_rate
from .protocol import DegenerateChannelError, assemble_extended, build_schedule

__all__ = [
    "SimConfig",
    "SweepRecord",
    "SlopeRecord",
    "SCHEME_ORDER",
    "trial_generator",
    "run_trial",
    "run_sweep",
    "worker_count",
]

log = logging.getLogger(__name__)

SCHEME_ORDER = ("ria", "tdma")
STREAM_CHANNELS = 0
STREAM_CSIT = 1

TDMA_POWER_MODES = ("total", "per-antenna")


@dataclass
class SimConfig:
    """Sweep configuration.

    snr_db and epsilon define the evaluation grid; trials realizations are
    averaged per cell. With tdma_power="total" the baseline spreads power
    P uniformly over the M antennas; "per-antenna" feeds P to each antenna
    instead (the two normalization conventions differ by a constant, not
    in slope). dof_anchors are the two SNRs (dB) used for slope estimates
    when compute_dof is set.
    """

    K: int = 3
    M: Optional[int] = None
    snr_db: Tuple[float, ...] = (5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0)
    epsilon: Tuple[float, ...] = (1.0,)
    trials: int = 2000
    seed: int = 1
    schemes: Tuple[str, ...] = SCHEME_ORDER
    dof_anchors: Tuple[float, float] = (40.0, 60.0)
    compute_dof: bool = False
    percentile: float = 10.0
    tdma_power: str = "total"

    def __post_init__(self) -> None:
        if self.M is None:
            self.M = self.K

    def validate(self) -> None:
        if self.K < 2:
            raise ValueError("need K >= 2 users")
        if self.M < self.K:
            raise ValueError("need M >= K transmit antennas")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if not self.snr_db:
            raise ValueError("SNR grid is empty")
        if not self.epsilon:
            raise ValueError("epsilon grid is empty")
        if any(not 0.0 <= e <= 1.0 for e in self.epsilon):
            raise ValueError("every epsilon must lie in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        bad = [s for s in self.schemes if s not in SCHEME_ORDER]
        if bad or not self.schemes:
            raise ValueError(f"schemes must be a non-empty subset of {SCHEME_ORDER}")
        if not 0.0 < self.percentile < 100.0:
            raise ValueError("percentile must lie strictly between 0 and 100")
        if self.tdma_power not in TDMA_POWER_MODES:
            raise ValueError(f"tdma_power must be one of {TDMA_POWER_MODES}")
        if self.compute_dof and not self.dof_anchors[1] > self.dof_anchors[0]:
            raise ValueError("dof_anchors must be an increasing (low, high) dB pair")


@dataclass
class SweepRecord:
    """One aggregated (scheme, K, epsilon, SNR) cell."""

    scheme: str
    K: int
    epsilon: float
    snr_db: float
    trials: int
    mean_rate_per_user: float
    outage10_rate: float
    std_error: float


@dataclass
class SlopeRecord:
    """Empirical DoF between the two anchor SNRs."""

    scheme: str
    K: int
    epsilon: float
    snr_lo_db: float
    snr_hi_db: float
    dof: float


def trial_generator(seed: int, trial_index: int, stream: int) -> np.random.Generator:
    """Per-trial PCG64 generator keyed by (master seed, stream, trial)."""
    return np.random.default_rng(np.random.SeedSequence((seed, stream, trial_index)))


def linear_snr(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def run_trial(
    config: SimConfig,
    epsilon: Optional[float],
    P: float,
    trial_index: int,
) -> Dict[str, RateSample]:
    """Evaluate one seeded realization for every configured scheme.

    epsilon=None forces exact estimates (zero feedback error), which makes
    the residual interference vanish identically. The TDMA baseline reuses
    the scheme's own-link phase-1 channels, one user per slot, an isotropic
    covariance and no receiver-side cancellation, so its per-user rate is
    (1/K) log2(1 + p ||h_jj||^2) with p = P/M or P per tdma_power.
    """
    K, M = config.K, config.M
    schedule = build_schedule(K)
    channels = draw_channels(K, M, schedule, trial_generator(config.seed, trial_index, STREAM_CHANNELS))

    out: Dict[str, RateSample] = {}
    if "ria" in config.schemes:
        if epsilon is None:
            csit = perfect_csit(channels)
        else:
            csit = corrupt_csit(
                channels, epsilon, P, trial_generator(config.seed, trial_index, STREAM_CSIT)
            )
        system = assemble_extended(channels, csit, schedule, P)
        rates = np.empty(K)
        for j in range(1, K + 1):
            ups = noise_interference_cov(system.U[j], system.Xi[j])
            rates[j - 1] = user_rate(system.Heq[j], ups, schedule.W)
        out["ria"] = RateSample(per_user_rate=rates, P=P, epsilon=epsilon)
    if "tdma" in config.schemes:
        p_stream = P if config.tdma_power == "per-antenna" else P / M
        rates = np.empty(K)
        for j in range(1, K + 1):
            gain = float(np.linalg.norm(channels.vector(j, j, 1, j)) ** 2)
            rates[j - 1] = math.log2(1.0 + p_stream * gain) / K
        out["tdma"] = RateSample(per_user_rate=rates, P=P, epsilon=epsilon)
    return out


def worker_count() -> int:
    """Worker threads for trial evaluation, capped by RIA_SIM_THREADS."""
    raw = os.environ.get("RIA_SIM_THREADS")
    if raw is None:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("RIA_SIM_THREADS must be a positive integer")
    return n


@dataclass
class _CellStats:
    trials: int
    mean: float
    outage: float
    std_error: float


def _evaluate_cell(config: SimConfig, epsilon: float, snr_db: float) -> Dict[str, _CellStats]:
    """Run all trials of one (epsilon, SNR) grid cell and aggregate."""
    P = linear_snr(snr_db)

    def one(t: int):
        try:
            return run_trial(config, epsilon, P, t)
        except DegenerateChannelError:
            return None

    workers = worker_count()
    if workers == 1:
        results = [one(t) for t in range(config.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(config.trials)))

    skipped = sum(r is None for r in results)
    if skipped:
        log.warning("skipped %d degenerate trials at eps=%s snr=%s dB", skipped, epsilon, snr_db)
    kept = [r for r in results if r is not None]
    if not kept:
        raise ValueError("every trial of the cell was degenerate")

    stats: Dict[str, _CellStats] = {}
    for scheme in config.schemes:
        rates = np.vstack([r[scheme].per_user_rate for r in kept])
        n = rates.shape[0]
        per_trial = rates.mean(axis=1)
        se = float(per_trial.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        outage = outage_rate(rates.ravel(), config.percentile)
        mean = float(rates.mean())
        if not outage <= np.percentile(rates.ravel(), 100.0 - config.percentile) + 1e-12:
            raise AssertionError("percentile ordering violated")
        stats[scheme] = _CellStats(trials=n, mean=mean, outage=outage, std_error=se)
    return stats


def run_sweep(config: SimConfig) -> Tuple[List[SweepRecord], Optional[List[SlopeRecord]]]:
    """Sweep the (scheme, epsilon, SNR) grid; optionally add DoF slopes.

    Records are ordered scheme-major (ria before tdma), then by the given
    epsilon order, then by the given SNR order. Slopes use the mean rates
    at the two anchor SNRs, simulating extra cells when an anchor is not
    part of the grid; anchor-only cells do not appear among the records.
    """
    config.validate()
    cells: Dict[Tuple[float, float], Dict[str, _CellStats]] = {}

    def cell(epsilon: float, snr_db: float) -> Dict[str, _CellStats]:
        key = (epsilon, snr_db)
        if key not in cells:
            cells[key] = _evaluate_cell(config, epsilon, snr_db)
        return cells[key]

    records: List[SweepRecord] = []
    for scheme in (s for s in SCHEME_ORDER if s in config.schemes):
        for eps in config.epsilon:
            for snr in config.snr_db:
                st = cell(eps, snr)[scheme]
                records.append(
                    SweepRecord(
                        scheme=scheme,
                        K=config.K,
                        epsilon=eps,
                        snr_db=snr,
                        trials=st.trials,
                        mean_rate_per_user=st.mean,
                        outage10_rate=st.outage,
                        std_error=st.std_error,
                    )
                )

    slopes: Optional[List[SlopeRecord]] = None
    if config.compute_dof:
        lo, hi = config.dof_anchors
        slopes = []
        for scheme in (s for s in SCHEME_ORDER if s in config.schemes):
            for eps in config.epsilon:
                mean_lo = cell(eps, lo)[scheme].mean
                mean_hi = cell(eps, hi)[scheme].mean
                slopes.append(
                    SlopeRecord(
                        scheme=scheme,
                        K=config.K,
                        epsilon=eps,
                        snr_lo_db=lo,
                        snr_hi_db=hi,
                        dof=dof_slope(mean_hi, mean_lo, linear_snr(hi), linear_snr(lo)),
                    )
                )
    return records, slopes
