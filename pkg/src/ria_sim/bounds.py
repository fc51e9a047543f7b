"""Closed-form per-user DoF bounds and published reference curves.

The achievable (inner) bound of the retrospective alignment scheme with
feedback quality epsilon is (2/(K+1)) * (1 + (K-1) epsilon)/K; the
cooperation-based outer bound is the inverse harmonic number. TDMA, the
no-CSIT optimum, gives 1/K. Comparison curves for the local-dCSIT scheme
of Ghasemi, Motahari and Khandani and the SISO global-dCSIT scheme of
Abdoli, Ghasemi and Khandani are kept as digitized data for K = 2..10
rather than re-derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping

__all__ = [
    "inner_bound",
    "outer_bound",
    "tdma_dof",
    "crossover_epsilon",
    "ReferenceCurves",
    "REFERENCE_CURVES",
]


def inner_bound(K: int, epsilon: float) -> float:
    """Achievable DoF per user with feedback quality epsilon in [0, 1]."""
    if K < 1:
        raise ValueError("need K >= 1")
    return (2.0 / (K + 1)) * (1.0 + (K - 1) * epsilon) / K


def outer_bound(K: int) -> float:
    """Cooperation outer bound, the inverse harmonic number 1/H_K."""
    if K < 1:
        raise ValueError("need K >= 1")
    return 1.0 / sum(1.0 / i for i in range(1, K + 1))


def tdma_dof(K: int) -> float:
    """DoF per user of TDMA, optimal without any CSIT."""
    if K < 1:
        raise ValueError("need K >= 1")
    return 1.0 / K


def crossover_epsilon(K: int) -> float:
    """Feedback quality at which the scheme's DoF meets TDMA's 1/K.

    Solving inner_bound(K, eps) = 1/K gives eps = ((K+1)/2 - 1)/(K-1),
    which is 1/2 for every K >= 2.
    """
    if K < 2:
        raise ValueError("need K >= 2, TDMA and the scheme coincide at K = 1")
    return ((K + 1) / 2.0 - 1.0) / (K - 1)


@dataclass(frozen=True)
class ReferenceCurves:
    """Golden (K, DoF-per-user) series for K = 2..10, one per scheme name."""

    series: Mapping[str, Mapping[int, float]]

    def dof(self, name: str, K: int) -> float:
        return self.series[name][K]

    def has(self, name: str, K: int) -> bool:
        return name in self.series and K in self.series[name]


_K_RANGE = range(2, 11)

_SERIES: Dict[str, Dict[int, float]] = {
    # RIA achievable DoF at epsilon = 1 and its cooperation outer bound.
    "thm1_inner": dict(
        zip(
            _K_RANGE,
            [
                0.666666666666667,
                0.5,
                0.4,
                0.333333333333333,
                0.285714285714286,
                0.25,
                0.222222222222222,
                0.2,
                0.181818181818182,
            ],
        )
    ),
    "thm1_outer": dict(
        zip(
            _K_RANGE,
            [
                0.666666666666667,
                0.545454545454546,
                0.48,
                0.437956204379562,
                0.408163265306123,
                0.385674931129477,
                0.367936925098555,
                0.353485762379015,
                0.341417152147406,
            ],
        )
    ),
    # Local-dCSIT comparison scheme (Ghasemi et al.), inner and outer.
    "ghasemi_inner": dict(
        zip(
            _K_RANGE,
            [
                0.666666666666667,
                0.428571428571429,
                0.307692307692308,
                0.238095238095238,
                0.193548387096774,
                0.162790697674419,
                0.140350877192982,
                0.123287671232877,
                0.10989010989011,
            ],
        )
    ),
    "ghasemi_outer": dict(
        zip(
            _K_RANGE,
            [
                0.666666666666667,
                0.714285714285714,
                0.769230769230769,
                0.80952380952381,
                0.838709677419355,
                0.86046511627907,
                0.87719298245614,
                0.89041095890411,
                0.901098901098901,
            ],
        )
    ),
    # SISO IC with global delayed CSIT (Abdoli et al.).
    "abdoli_siso_inner": dict(
        zip(
            _K_RANGE,
            [
                0.5,
                0.387096774193548,
                0.296052631578947,
                0.239111870196413,
                0.200596056854654,
                0.172832321888769,
                0.151863704422931,
                0.135460984743207,
                0.122274614750177,
            ],
        )
    ),
    "tdma": dict(
        zip(
            _K_RANGE,
            [
                0.5,
                0.333333333333333,
                0.25,
                0.2,
                0.166666666666667,
                0.142857142857143,
                0.125,
                0.111111111111111,
                0.1,
            ],
        )
    ),
}

REFERENCE_CURVES = ReferenceCurves(series=_SERIES)
