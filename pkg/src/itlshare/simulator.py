"""Seeded Monte Carlo cross-check of the closed-form outage expressions.

Every random quantity comes from a counter-based Philox stream keyed on
(seed, channel id), and trial t reads a fixed slice of its stream: the
served-link channel of network 1 consumes doubles [t*L, (t+1)*L), the
five other channels consume double t each. Positioning is exact, so any
partition of the trial range into batches, or a single draw_trial call,
reproduces bit-identical gains. Gains are exponential by inversion of
the survival function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .errors import ParameterError
from .scenario import (
    BEST_USER,
    CONCURRENT,
    SELECTIONS,
    SINGLE_NETWORK_1,
    ChannelStatistics,
    PowerPolicy,
    RatePolicy,
    Scenario,
)

# stream ids; a channel keeps its id even in modes that ignore it
_CHANNEL_IDS = {
    "h1": 0,       # network 1 transmitter to its L candidate users
    "h2": 1,       # network 2 transmitter to its M candidate users
    "g1p": 2,      # network 1 transmitter to the primary receiver
    "g2p": 3,      # network 2 transmitter to the primary receiver
    "g2_star": 4,  # network 2 transmitter into network 1's selected user
    "g1_star": 5,  # network 1 transmitter into network 2's selected user
}

_MASK64 = (1 << 64) - 1
_DOUBLES_PER_BLOCK = 4  # one Philox counter increment yields four doubles

MIN_TRIALS = 1_000
DEFAULT_CHUNK = 1 << 17


@dataclass(frozen=True)
class TrialDraw:
    """All channel gains of one trial; h1 and h2 hold the candidate links."""

    h1: np.ndarray
    h2: np.ndarray
    g1p: float
    g2p: float
    g2_star: float
    g1_star: float


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Point estimate with its standard error and the run that produced it."""

    mean: float
    std_error: float
    trials: int
    seed: int


def exponential_from_uniform(u, rate: float):
    """Map uniform variates in (0, 1) to exponential ones: -ln(u) / rate."""
    return -np.log(u) / rate


def _uniform_slice(seed: int, channel_id: int, start: int, count: int) -> np.ndarray:
    """Doubles [start, start + count) of the (seed, channel_id) stream."""
    key = np.array([seed & _MASK64, channel_id], dtype=np.uint64)
    bits = Philox(key=key)
    block, offset = divmod(start, _DOUBLES_PER_BLOCK)
    if block:
        bits.advance(block)
    return Generator(bits).random(offset + count)[offset:]


def _gain_slice(seed: int, channel: str, rate: float, start: int, count: int) -> np.ndarray:
    u = _uniform_slice(seed, _CHANNEL_IDS[channel], start, count)
    # 1 - u lies in (0, 1], closed at the top, so the log never overflows
    return exponential_from_uniform(1.0 - u, rate)


def _draw_batch(stats: ChannelStatistics, L: int, M: int, seed: int, lo: int, hi: int):
    n = hi - lo
    h1 = _gain_slice(seed, "h1", stats.lambda11, lo * L, n * L).reshape(n, L)
    h2 = _gain_slice(seed, "h2", stats.lambda22, lo * M, n * M).reshape(n, M)
    g1p = _gain_slice(seed, "g1p", stats.mu1p, lo, n)
    g2p = _gain_slice(seed, "g2p", stats.mu2p, lo, n)
    g2s = _gain_slice(seed, "g2_star", stats.mu21, lo, n)
    g1s = _gain_slice(seed, "g1_star", stats.mu12, lo, n)
    return h1, h2, g1p, g2p, g2s, g1s


def draw_trial(
    stats: ChannelStatistics, L: int, M: int, seed: int, trial_index: int = 0
) -> TrialDraw:
    """Gains of one trial, identical to the corresponding batch row."""
    if L < 1 or M < 1:
        raise ParameterError(f"L and M must be >= 1, got {L!r}, {M!r}")
    if trial_index < 0:
        raise ParameterError(f"trial_index must be >= 0, got {trial_index!r}")
    h1, h2, g1p, g2p, g2s, g1s = _draw_batch(stats, L, M, seed, trial_index, trial_index + 1)
    return TrialDraw(
        h1=h1[0],
        h2=h2[0],
        g1p=float(g1p[0]),
        g2p=float(g2p[0]),
        g2_star=float(g2s[0]),
        g1_star=float(g1s[0]),
    )


def _selected(h: np.ndarray, selection: str) -> np.ndarray:
    if selection == BEST_USER:
        return h.max(axis=1)
    return h[:, 0]


def _sinr_arrays(batch, power: PowerPolicy, rho: float, selection: str):
    h1, h2, g1p, g2p, g2s, g1s = batch
    own1 = _selected(h1, selection)
    own2 = _selected(h2, selection)
    if power.mode == CONCURRENT:
        a = power.alpha
        s1 = (a * rho) * own1 / g1p / ((1.0 - a) * rho * g2s / g2p + 1.0)
        s2 = ((1.0 - a) * rho) * own2 / g2p / (a * rho * g1s / g1p + 1.0)
    elif power.mode == SINGLE_NETWORK_1:
        s1 = rho * own1 / g1p
        s2 = np.zeros_like(s1)
    else:
        s2 = rho * own2 / g2p
        s1 = np.zeros_like(s2)
    return s1, s2


def sinr_pair(
    draw: TrialDraw, alpha: float, rho: float, selection: str = BEST_USER
) -> tuple[float, float]:
    """Both networks' SINRs for one trial under a concurrent split alpha."""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie strictly inside (0, 1), got {alpha!r}")
    if selection not in SELECTIONS:
        raise ParameterError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    x1 = float(np.max(draw.h1)) if selection == BEST_USER else float(draw.h1[0])
    x2 = float(np.max(draw.h2)) if selection == BEST_USER else float(draw.h2[0])
    s1 = (alpha * rho) * x1 / draw.g1p / ((1.0 - alpha) * rho * draw.g2_star / draw.g2p + 1.0)
    s2 = ((1.0 - alpha) * rho) * x2 / draw.g2p / (alpha * rho * draw.g1_star / draw.g1p + 1.0)
    return s1, s2


def outage_counts(
    scenario: Scenario,
    power: PowerPolicy,
    gamma_grid,
    trials: int,
    seed: int,
    chunk_size: int = DEFAULT_CHUNK,
) -> tuple[np.ndarray, np.ndarray]:
    """Outage counts of both networks at every threshold in gamma_grid.

    One pass over the trials serves the whole threshold grid, so a rate
    sweep reuses the same channel draws at every rate. The counts are
    integers accumulated per batch; merging partial counts is associative
    and the result does not depend on chunk_size.
    """
    if trials < 1:
        raise ParameterError(f"trials must be positive, got {trials!r}")
    if chunk_size < 1:
        raise ParameterError(f"chunk_size must be positive, got {chunk_size!r}")
    gammas = np.atleast_1d(np.asarray(gamma_grid, dtype=np.float64))
    c1 = np.zeros(gammas.shape, dtype=np.int64)
    c2 = np.zeros(gammas.shape, dtype=np.int64)
    stats, rho, sel = scenario.stats, scenario.rho, scenario.selection
    L, M = scenario.num_users_1, scenario.num_users_2
    for lo in range(0, trials, chunk_size):
        hi = min(lo + chunk_size, trials)
        batch = _draw_batch(stats, L, M, seed, lo, hi)
        s1, s2 = _sinr_arrays(batch, power, rho, sel)
        # index of gamma in the sorted SINRs = number of trials strictly below it
        c1 += np.searchsorted(np.sort(s1), gammas, side="left")
        c2 += np.searchsorted(np.sort(s2), gammas, side="left")
    return c1, c2


def _bernoulli_se(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n)


def estimate_outage(
    scenario: Scenario,
    rate: RatePolicy,
    power: PowerPolicy,
    network: int,
    trials: int,
    seed: int,
    chunk_size: int = DEFAULT_CHUNK,
) -> MonteCarloEstimate:
    """Empirical outage probability of one network with its Bernoulli SE."""
    if network not in (1, 2):
        raise ParameterError(f"network must be 1 or 2, got {network!r}")
    if trials < MIN_TRIALS:
        raise ParameterError(f"trials must be >= {MIN_TRIALS}, got {trials!r}")
    c1, c2 = outage_counts(scenario, power, [rate.gamma_th], trials, seed, chunk_size)
    count = int(c1[0]) if network == 1 else int(c2[0])
    mean = count / trials
    return MonteCarloEstimate(mean, _bernoulli_se(mean, trials), trials, seed)


def estimate_sum_throughput(
    scenario: Scenario,
    rate: RatePolicy,
    power: PowerPolicy,
    trials: int,
    seed: int,
    chunk_size: int = DEFAULT_CHUNK,
) -> MonteCarloEstimate:
    """Empirical sum goodput; SE propagates both networks' Bernoulli errors."""
    if trials < MIN_TRIALS:
        raise ParameterError(f"trials must be >= {MIN_TRIALS}, got {trials!r}")
    c1, c2 = outage_counts(scenario, power, [rate.gamma_th], trials, seed, chunk_size)
    r = rate.rate_bpcu
    shares = power.shares()
    means, variances = [], []
    for share, count in zip(shares, (int(c1[0]), int(c2[0]))):
        if share == 0.0:
            continue  # a silent network contributes no goodput and no noise
        p = count / trials
        means.append((1.0 - p) * r)
        variances.append((r * _bernoulli_se(p, trials)) ** 2)
    return MonteCarloEstimate(math.fsum(means), math.sqrt(math.fsum(variances)), trials, seed)
