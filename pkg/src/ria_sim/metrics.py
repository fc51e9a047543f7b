"""Rate, covariance and degrees-of-freedom measurements.

Rates are Gaussian mutual informations of the filtered linear model,
normalized per channel use (divided by the W slots of the transmission).
The empirical DoF is the slope of the mean rate against log2 of the SNR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RateSample",
    "noise_interference_cov",
    "user_rate",
    "user_rate_direct",
    "dof_slope",
    "theoretical_dof_k3",
    "outage_rate",
]

_LN2 = math.log(2.0)


@dataclass
class RateSample:
    """Per-user rates of one realization (bits/s/Hz per channel use)."""

    per_user_rate: np.ndarray
    P: float
    epsilon: float | None


def noise_interference_cov(U: np.ndarray, Xi: np.ndarray) -> np.ndarray:
    """Covariance of filtered interference plus noise, U Xi Xi^H U^H + U U^H.

    Symbols and the per-sample noise have unit variance, so the noise part
    is the filter Gram matrix. The result is Hermitian positive definite
    (symmetrized to clean up rounding).
    """
    R = U @ Xi
    ups = R @ R.conj().T + U @ U.conj().T
    return 0.5 * (ups + ups.conj().T)


def user_rate(Heq: np.ndarray, Upsilon: np.ndarray, W: int) -> float:
    """Achievable rate (1/W) log2 det(I + Upsilon^-1 Heq Heq^H).

    Heq is the equivalent desired channel after filtering and Upsilon the
    interference-plus-noise covariance; symbols carry identity covariance,
    transmit power being inside the precoders. Evaluated through a
    Cholesky whitening of Upsilon; a non-positive-definite Upsilon raises
    numpy.linalg.LinAlgError, which signals an upstream bug.
    """
    L = np.linalg.cholesky(Upsilon)
    B = np.linalg.solve(L, Heq)
    G = np.eye(B.shape[0], dtype=complex) + B @ B.conj().T
    _, logdet = np.linalg.slogdet(G)
    return float(logdet.real) / (W * _LN2)


def user_rate_direct(U: np.ndarray, desired: np.ndarray, Xi: np.ndarray, W: int) -> float:
    """Independent rate evaluation on the unfiltered W-dimensional model.

    desired is the W x b stack of desired-signal columns (extended channel
    times stacked precoder). The mutual information of the filtered
    observation U y is computed directly as the log-det ratio of the two
    covariances restricted to U's row space, without forming the
    equivalent channel or the whitened system. Serves as the oracle for
    `user_rate`.
    """
    W_dim = U.shape[1]
    interf = Xi @ Xi.conj().T + np.eye(W_dim, dtype=complex)
    total = interf + desired @ desired.conj().T
    _, logdet_total = np.linalg.slogdet(U @ total @ U.conj().T)
    _, logdet_interf = np.linalg.slogdet(U @ interf @ U.conj().T)
    return float((logdet_total - logdet_interf).real) / (W * _LN2)


def dof_slope(rate_hi: float, rate_lo: float, p_hi: float, p_lo: float) -> float:
    """Finite-difference DoF estimate (rate_hi - rate_lo)/(log2 p_hi - log2 p_lo).

    p_hi and p_lo are linear SNRs with p_hi > p_lo > 0; both should sit
    well above the noise floor (40 dB or more) for the slope to read the
    high-SNR prelog.
    """
    if p_lo <= 0.0 or p_hi <= p_lo:
        raise ValueError("need p_hi > p_lo > 0 for a slope estimate")
    return (rate_hi - rate_lo) / (math.log2(p_hi) - math.log2(p_lo))


def theoretical_dof_k3(epsilon: float) -> float:
    """Closed-form per-user DoF of the 3-user scheme, (1 + 2 epsilon)/6."""
    return (1.0 + 2.0 * epsilon) / 6.0


def outage_rate(samples, percentile: float = 10.0) -> float:
    """Empirical percentile of a rate sample, sorted-order linear interpolation.

    Uses the standard linear interpolation convention (numpy's default),
    e.g. samples 1..100 at the 10th percentile give 10.9. The 10-percentile
    outage rate is the rate exceeded in 90% of realizations.
    """
    arr = np.asarray(samples, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("outage percentile of an empty sample is undefined")
    if not 0.0 < percentile < 100.0:
        raise ValueError("percentile must lie strictly between 0 and 100")
    return float(np.percentile(arr, percentile, method="linear"))
