"""Flat-fading channel generation and the delayed-CSIT error model.

Channel rows h_{j,i}^{(p,s)} are 1 x M vectors of i.i.d. unit-variance
circularly-symmetric complex Gaussian gains (Rayleigh fading), drawn
independently for every slot. Transmitters only ever learn their own
departing phase-1 channels, after the fact and through a noisy feedback
link: the report carries hhat = h - herr where the estimation error herr
has total power P**(-epsilon), epsilon in [0, 1] being the feedback
quality exponent (epsilon = 1 is asymptotically perfect, epsilon = 0
leaves an error floor).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Tuple

import numpy as np

if TYPE_CHECKING:
    from .protocol import Schedule

__all__ = ["ChannelSet", "CsitReport", "draw_channels", "corrupt_csit", "perfect_csit"]

# (receiver j, transmitter i, phase p, slot s); estimates fix s = i in phase 1
ChannelKey = Tuple[int, int, int, int]
EstimateKey = Tuple[int, int]


@dataclass
class ChannelSet:
    """True channel rows of one fading realization.

    entries holds one length-M complex vector per (j, i, p, s) with
    transmitter i active during slot (p, s) of the governing schedule.
    """

    K: int
    M: int
    entries: Dict[ChannelKey, np.ndarray] = field(repr=False)

    def vector(self, j: int, i: int, p: int, s: int) -> np.ndarray:
        return self.entries[(j, i, p, s)]


@dataclass
class CsitReport:
    """Transmitter-side estimates of the phase-1 channels.

    estimates maps (receiver j, transmitter i) to hhat_{j,i}^{(1,i)}, the
    reported version of the channel departing transmitter i during its own
    OT slot. cee_power is the calibrated error power P**(-epsilon); the
    ensemble average of ||h - hhat||**2 equals it.
    """

    estimates: Dict[EstimateKey, np.ndarray] = field(repr=False)
    epsilon: float = 1.0
    cee_power: float = 0.0

    def estimate(self, j: int, i: int) -> np.ndarray:
        return self.estimates[(j, i)]


def _complex_gaussian(rng: np.random.Generator, shape: tuple) -> np.ndarray:
    z = rng.standard_normal(shape + (2,))
    return (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2.0)


def draw_channels(K: int, M: int, schedule: "Schedule", rng: np.random.Generator) -> ChannelSet:
    """Draw one i.i.d. Rayleigh realization covering a whole schedule.

    One vector is produced per (receiver, active transmitter, slot), in
    schedule order with transmitters ascending and receivers 1..K, so the
    draw is a pure function of the generator state.

    Raises ValueError if M < K; the alignment scheme needs at least as
    many transmit antennas as users.
    """
    if K < 2:
        raise ValueError("need K >= 2 users")
    if M < K:
        raise ValueError(f"need M >= K transmit antennas, got M={M} < K={K}")
    if schedule.K != K:
        raise ValueError("schedule was built for a different user count")
    keys = [
        (j, i, slot.phase, slot.index)
        for slot in schedule.slots
        for i in slot.active
        for j in range(1, K + 1)
    ]
    vecs = _complex_gaussian(rng, (len(keys), M))
    return ChannelSet(K=K, M=M, entries={key: vecs[n] for n, key in enumerate(keys)})


def corrupt_csit(
    channels: ChannelSet,
    epsilon: float,
    P: float,
    rng: np.random.Generator,
) -> CsitReport:
    """Produce the imperfect delayed-CSIT report for all phase-1 channels.

    The error herr is drawn independently of the true channel, i.i.d.
    complex Gaussian with per-entry variance P**(-epsilon)/M, and the
    estimate is hhat = h - herr, so E||herr||**2 = P**(-epsilon) over the
    M entries. Errors are drawn transmitter-major (i = 1..K, then
    receivers j = 1..K), one length-M vector each.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("feedback quality epsilon must lie in [0, 1]")
    if P <= 0.0:
        raise ValueError("linear SNR P must be positive")
    K, M = channels.K, channels.M
    cee_power = float(P) ** (-float(epsilon))
    err = np.sqrt(cee_power / M) * _complex_gaussian(rng, (K, K, M))
    estimates = {
        (j, i): channels.vector(j, i, 1, i) - err[i - 1, j - 1]
        for i in range(1, K + 1)
        for j in range(1, K + 1)
    }
    return CsitReport(estimates=estimates, epsilon=float(epsilon), cee_power=cee_power)


def perfect_csit(channels: ChannelSet) -> CsitReport:
    """Error-free report (hhat = h exactly), for alignment-exactness checks."""
    K = channels.K
    estimates = {
        (j, i): channels.vector(j, i, 1, i).copy()
        for i in range(1, K + 1)
        for j in range(1, K + 1)
    }
    return CsitReport(estimates=estimates, epsilon=1.0, cee_power=0.0)
