"""Numeric search for the optimal ITL split and the concurrency crossover rate.

The closed forms in analytics cover the single-user case; these searches
work for any diversity order and any formula tier by direct evaluation
of the sum-throughput objective.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ParameterError
from .scenario import (
    SINGLE_NETWORK_1,
    SINGLE_NETWORK_2,
    PowerPolicy,
    RatePolicy,
    Scenario,
)
from .analytics import sum_throughput

# the objective is evaluated on the open interval; the edges starve one network
ALPHA_MIN = 0.005
ALPHA_MAX = 0.995

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class AlphaStar(NamedTuple):
    alpha: float
    tau_bpcu: float


class CriticalRate(NamedTuple):
    rate_bpcu: float
    crossover: bool  # False: no sign change inside the bracket


def _golden_max(fn, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal fn on [lo, hi]."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = fn(c), fn(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = fn(d)
    mid = 0.5 * (lo + hi)
    return mid, fn(mid)


def alpha_star_numeric(
    scenario: Scenario,
    rate: RatePolicy,
    tier: str = "rational",
    grid_points: int = 101,
    tol: float = 1e-5,
) -> AlphaStar:
    """Best concurrent ITL fraction for network 1 and its sum throughput.

    A coarse scan over [ALPHA_MIN, ALPHA_MAX] brackets the maximum, then
    golden-section refinement narrows the bracket below tol. If the
    refinement somehow lands below the best scanned point (possible only
    for a non-unimodal objective), the scanned point is kept, so the
    result never falls below the coarse-grid maximum.
    """
    if grid_points < 3:
        raise ParameterError(f"grid_points must be >= 3, got {grid_points!r}")

    def tau(a: float) -> float:
        return sum_throughput(scenario, rate, PowerPolicy(alpha=float(a)), tier)

    alphas = np.linspace(ALPHA_MIN, ALPHA_MAX, grid_points)
    values = [tau(a) for a in alphas]
    i = int(np.argmax(values))
    lo = float(alphas[max(i - 1, 0)])
    hi = float(alphas[min(i + 1, grid_points - 1)])
    best_alpha, best_tau = _golden_max(tau, lo, hi, tol)
    if best_tau < values[i]:
        best_alpha, best_tau = float(alphas[i]), float(values[i])
    return AlphaStar(alpha=best_alpha, tau_bpcu=best_tau)


def critical_rate_numeric(
    scenario: Scenario,
    tier: str = "rational",
    rate_lo: float = 0.01,
    rate_hi: float = 20.0,
    tol: float = 1e-3,
    grid_points: int = 101,
) -> CriticalRate:
    """Rate at which the best single network overtakes the best concurrent split.

    Bisects the sign change of win(R) = tau_concurrent(alpha*(R)) minus the
    better single-network throughput. Returns crossover=False with rate 0
    when concurrency never wins on the bracket, and crossover=False with
    rate_hi when it still wins at the top, leaving the caller to widen.
    """
    if not rate_lo > 0.0 or not rate_hi > rate_lo:
        raise ParameterError(
            f"need 0 < rate_lo < rate_hi, got {rate_lo!r}, {rate_hi!r}"
        )

    def win(r: float) -> float:
        policy_rate = RatePolicy(r)
        conc = alpha_star_numeric(scenario, policy_rate, tier, grid_points).tau_bpcu
        single = max(
            sum_throughput(scenario, policy_rate, PowerPolicy(mode=SINGLE_NETWORK_1), tier),
            sum_throughput(scenario, policy_rate, PowerPolicy(mode=SINGLE_NETWORK_2), tier),
        )
        return conc - single

    if win(rate_lo) <= 0.0:
        return CriticalRate(rate_bpcu=0.0, crossover=False)
    if win(rate_hi) > 0.0:
        return CriticalRate(rate_bpcu=rate_hi, crossover=False)
    lo, hi = rate_lo, rate_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if win(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return CriticalRate(rate_bpcu=0.5 * (lo + hi), crossover=True)
