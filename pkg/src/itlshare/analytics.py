"""Closed-form outage and throughput for the shared-ITL downlink pair.

Under peak-interference power control each transmitter's power is the
granted ITL fraction divided by its own gain to the primary receiver.
With exponential channel gains the outage probability of the selected
receiver admits a finite alternating-binomial expansion whose per-order
term is an elementary function of two numbers,

    a_j = 1 + lambda * j * gamma / (mu_ownP * share * rho)
    b_j = x * j * gamma,
    x   = (mu_otherP * lambda / (mu_ownP * mu_cross)) * (1 - share) / share,

where a_j carries the noise-limited part and b_j the cross-network
interference. The same log-ratio kernel evaluates the exact term and
its large-rho limit, so the singular point b_j = a_j is handled once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .scenario import BEST_USER, PowerPolicy, RatePolicy, Scenario

# past ~25 diversity orders the alternating binomial sum loses all precision
MAX_USERS = 25

# half-width of the series window around the removable singularity t = 1
_SINGULAR_WINDOW = 1e-6

TIERS = ("exact", "highitl", "rational")


@dataclass(frozen=True)
class OutageParams:
    """Inputs of the outage expansion for one network.

    num_users is the diversity order N (the selection picks the best of
    N i.i.d. served links; N = 1 reproduces round-robin). share is the
    ITL fraction granted to this network's transmitter; share = 1 means
    the other transmitter is silent, which removes the cross term.
    """

    num_users: int
    lambda_main: float
    mu_own_p: float
    mu_other_p: float
    mu_cross: float
    share: float
    gamma_th: float
    rho: float

    def __post_init__(self):
        n = self.num_users
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ParameterError(f"num_users must be an integer >= 1, got {n!r}")
        if n > MAX_USERS:
            raise ParameterError(
                f"num_users = {n} exceeds {MAX_USERS}; the alternating binomial "
                "expansion overflows double precision beyond that"
            )
        for name in ("lambda_main", "mu_own_p", "mu_other_p"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v <= 0.0:
                raise ParameterError(f"{name} must be positive and finite, got {v!r}")
        # mu_cross = inf is the no-cross-interference limit and is allowed
        if not self.mu_cross > 0.0 or math.isnan(self.mu_cross):
            raise ParameterError(f"mu_cross must be positive, got {self.mu_cross!r}")
        if not 0.0 < self.share <= 1.0:
            raise ParameterError(f"share must lie in (0, 1], got {self.share!r}")
        if not math.isfinite(self.gamma_th) or self.gamma_th <= 0.0:
            raise ParameterError(f"gamma_th must be positive and finite, got {self.gamma_th!r}")
        if not math.isfinite(self.rho) or self.rho <= 0.0:
            raise ParameterError(f"rho must be positive and finite, got {self.rho!r}")


def _log_ratio_kernel(t: float) -> float:
    """t * (t - ln t - 1) / (1 - t)**2, continued to 0 at t=0 and 1/2 at t=1.

    Increasing from 0 to 1 on t >= 0. Near t = 1 the direct form loses
    all significance, so a short series in d = t - 1 takes over inside
    a +-1e-6 window; for very large t the expression is regrouped so the
    squared denominator cannot overflow.
    """
    if t == 0.0:
        return 0.0
    if t == math.inf:
        return 1.0
    d = t - 1.0
    if abs(d) < _SINGULAR_WINDOW:
        return 0.5 + d / 6.0 - d * d / 12.0
    if t > 1e8:
        inv = 1.0 / t
        return (1.0 - (math.log(t) + 1.0) * inv) / ((inv - 1.0) * (inv - 1.0))
    if 0.5 < t < 2.0:
        # d - log1p(d) is cancellation-free here (the subtraction is exact),
        # so the branch stays accurate right up to the series window
        return t * (d - math.log1p(d)) / (d * d)
    return t * (t - math.log(t) - 1.0) / (d * d)


def _alternating_sum(num_users: int, term) -> float:
    """fsum of C(N, j) * (-1)**(j+1) * term(j) for j = 1..N, exactly rounded."""
    return math.fsum(
        math.comb(num_users, j) * (term(j) if j % 2 else -term(j))
        for j in range(1, num_users + 1)
    )


def _clamp_unit(p: float) -> float:
    # absorbs <= 1e-12 rounding excursions of the alternating sum
    return min(1.0, max(0.0, p))


def _cross_coefficient(p: OutageParams) -> float:
    """x in b_j = x * j * gamma; zero when the other transmitter is silent."""
    if p.share >= 1.0:
        return 0.0
    base = p.mu_other_p * p.lambda_main / (p.mu_own_p * p.mu_cross)
    return base * (1.0 - p.share) / p.share


def outage_exact(p: OutageParams) -> float:
    """Outage probability of the selected receiver, exact at any rho."""
    x = _cross_coefficient(p)
    a_slope = p.lambda_main * p.gamma_th / (p.mu_own_p * p.share * p.rho)

    def term(j: int) -> float:
        a_j = 1.0 + a_slope * j
        b_j = x * j * p.gamma_th
        return (1.0 - _log_ratio_kernel(b_j / a_j)) / a_j

    return _clamp_unit(1.0 - _alternating_sum(p.num_users, term))


def outage_approx_highitl(p: OutageParams) -> float:
    """Large-rho limit: noise drops out and only the cross term survives.

    With share = 1 the cross term is absent and the limit is zero outage.
    """
    x = _cross_coefficient(p)
    return _clamp_unit(
        _alternating_sum(p.num_users, lambda j: _log_ratio_kernel(x * j * p.gamma_th))
    )


def outage_approx_rational(p: OutageParams) -> float:
    """Rational surrogate of the large-rho limit, kernel replaced by t/(1+t).

    Keeps the location of the throughput-optimal share while making the
    objective amenable to closed-form reasoning; slightly optimistic.
    """
    x = _cross_coefficient(p)
    return _clamp_unit(
        1.0 - _alternating_sum(p.num_users, lambda j: 1.0 / (x * j * p.gamma_th + 1.0))
    )


_OUTAGE_BY_TIER = {
    "exact": outage_exact,
    "highitl": outage_approx_highitl,
    "rational": outage_approx_rational,
}


def _outage_fn(tier: str):
    try:
        return _OUTAGE_BY_TIER[tier]
    except KeyError:
        raise ParameterError(f"tier must be one of {TIERS}, got {tier!r}") from None


def network1_params(scenario: Scenario, rate: RatePolicy, power: PowerPolicy) -> OutageParams:
    """Outage inputs of network 1 under the given rate and power split."""
    share1, _ = power.shares()
    if share1 == 0.0:
        raise ParameterError("network 1 is silent in single-network-2 mode")
    s = scenario.stats
    return OutageParams(
        num_users=_diversity_order(scenario, scenario.num_users_1),
        lambda_main=s.lambda11,
        mu_own_p=s.mu1p,
        mu_other_p=s.mu2p,
        mu_cross=s.mu21,
        share=share1,
        gamma_th=rate.gamma_th,
        rho=scenario.rho,
    )


def network2_params(scenario: Scenario, rate: RatePolicy, power: PowerPolicy) -> OutageParams:
    """Outage inputs of network 2 under the given rate and power split."""
    _, share2 = power.shares()
    if share2 == 0.0:
        raise ParameterError("network 2 is silent in single-network-1 mode")
    s = scenario.stats
    return OutageParams(
        num_users=_diversity_order(scenario, scenario.num_users_2),
        lambda_main=s.lambda22,
        mu_own_p=s.mu2p,
        mu_other_p=s.mu1p,
        mu_cross=s.mu12,
        share=share2,
        gamma_th=rate.gamma_th,
        rho=scenario.rho,
    )


def _diversity_order(scenario: Scenario, num_users: int) -> int:
    # round-robin serves a fixed user, so its outage is the single-user one
    return num_users if scenario.selection == BEST_USER else 1


def outage_pair(
    scenario: Scenario, rate: RatePolicy, power: PowerPolicy, tier: str = "exact"
) -> tuple[float, float]:
    """Outage probabilities (network 1, network 2); a silent network reads 1."""
    fn = _outage_fn(tier)
    share1, share2 = power.shares()
    p1 = fn(network1_params(scenario, rate, power)) if share1 > 0.0 else 1.0
    p2 = fn(network2_params(scenario, rate, power)) if share2 > 0.0 else 1.0
    return p1, p2


def sum_throughput(
    scenario: Scenario, rate: RatePolicy, power: PowerPolicy, tier: str = "exact"
) -> float:
    """Sum of per-network goodput (1 - outage) * R in bits per channel use."""
    p1, p2 = outage_pair(scenario, rate, power, tier)
    return (1.0 - p1) * rate.rate_bpcu + (1.0 - p2) * rate.rate_bpcu


def alpha_star_closed_form(stats) -> float:
    """Throughput-optimal ITL fraction for network 1 in the single-user case.

    1 / (1 + (mu1p/mu2p) * sqrt((lambda22/lambda11) * (mu21/mu12))). Valid
    as the throughput maximizer when both networks have one served user
    (or round-robin selection); with multiuser selection use the numeric
    search instead.
    """
    ratio = (stats.mu1p / stats.mu2p) * math.sqrt(
        (stats.lambda22 / stats.lambda11) * (stats.mu21 / stats.mu12)
    )
    return 1.0 / (1.0 + ratio)


def critical_rate_closed_form(stats) -> float:
    """Rate above which one network alone beats any concurrent split.

    log2(1 + sqrt(mu12 * mu21 / (lambda11 * lambda22))), the single-user
    crossover of the rational-tier throughput; same validity note as
    alpha_star_closed_form.
    """
    g = math.sqrt(stats.mu12 * stats.mu21 / (stats.lambda11 * stats.lambda22))
    return math.log2(1.0 + g)
