"""Two secondary downlinks sharing one interference temperature limit.

Closed-form outage and sum-throughput evaluation, optimal apportioning
of the interference budget, the critical rate beyond which time-sharing
a single network wins, and a seeded Monte Carlo simulator that
cross-checks all of it.
"""

from .errors import ItlShareError, ParameterError, ScenarioFileError
from .scenario import (
    BEST_USER,
    CONCURRENT,
    MODES,
    ROUND_ROBIN,
    SELECTIONS,
    SINGLE_NETWORK_1,
    SINGLE_NETWORK_2,
    ChannelStatistics,
    Geometry,
    PowerPolicy,
    RatePolicy,
    RunConfig,
    Scenario,
    bundled_scenario_names,
    bundled_scenario_text,
    channel_stats_from_geometry,
    gamma_threshold,
    ip_linear,
    load_scenario_file,
    parse_scenario_text,
)
from .analytics import (
    MAX_USERS,
    TIERS,
    OutageParams,
    alpha_star_closed_form,
    critical_rate_closed_form,
    network1_params,
    network2_params,
    outage_approx_highitl,
    outage_approx_rational,
    outage_exact,
    outage_pair,
    sum_throughput,
)
from .simulator import (
    MonteCarloEstimate,
    TrialDraw,
    draw_trial,
    estimate_outage,
    estimate_sum_throughput,
    exponential_from_uniform,
    outage_counts,
    sinr_pair,
)
from .optimizer import (
    AlphaStar,
    CriticalRate,
    alpha_star_numeric,
    critical_rate_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "ItlShareError",
    "ParameterError",
    "ScenarioFileError",
    "BEST_USER",
    "CONCURRENT",
    "MODES",
    "ROUND_ROBIN",
    "SELECTIONS",
    "SINGLE_NETWORK_1",
    "SINGLE_NETWORK_2",
    "ChannelStatistics",
    "Geometry",
    "PowerPolicy",
    "RatePolicy",
    "RunConfig",
    "Scenario",
    "bundled_scenario_names",
    "bundled_scenario_text",
    "channel_stats_from_geometry",
    "gamma_threshold",
    "ip_linear",
    "load_scenario_file",
    "parse_scenario_text",
    "MAX_USERS",
    "TIERS",
    "OutageParams",
    "alpha_star_closed_form",
    "critical_rate_closed_form",
    "network1_params",
    "network2_params",
    "outage_approx_highitl",
    "outage_approx_rational",
    "outage_exact",
    "outage_pair",
    "sum_throughput",
    "MonteCarloEstimate",
    "TrialDraw",
    "draw_trial",
    "estimate_outage",
    "estimate_sum_throughput",
    "exponential_from_uniform",
    "outage_counts",
    "sinr_pair",
    "AlphaStar",
    "CriticalRate",
    "alpha_star_numeric",
    "critical_rate_numeric",
    "__version__",
]
