"""Command-line front end: sweeps, optimization, and self-validation.

Sweep outputs are CSV with a header row, nine significant digits, and a
trailing newline; together with the counter-based simulator this makes a
rerun with identical arguments byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .errors import ItlShareError, ParameterError
from .scenario import (
    CONCURRENT,
    SINGLE_NETWORK_1,
    SINGLE_NETWORK_2,
    ROUND_ROBIN,
    PowerPolicy,
    RatePolicy,
    RunConfig,
    load_scenario_file,
)
from . import analytics
from .analytics import (
    OutageParams,
    alpha_star_closed_form,
    critical_rate_closed_form,
    outage_exact,
    outage_pair,
    sum_throughput,
)
from .optimizer import ALPHA_MAX, ALPHA_MIN, alpha_star_numeric, critical_rate_numeric
from .simulator import estimate_sum_throughput, outage_counts

_FLOAT_FMT = ".9g"


@dataclass(frozen=True)
class SweepResult:
    """A CSV-ready table: one independent variable, analytic and MC columns."""

    header: list[str]
    rows: list[list[float]]

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(self.header)
            for row in self.rows:
                writer.writerow(format(v, _FLOAT_FMT) for v in row)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, _FLOAT_FMT)
    return str(value)


def _print_kv(key: str, value) -> None:
    print(f"{key} = {_fmt(value)}")


def _users_argument(text: str) -> list[int]:
    items = [s for s in (piece.strip() for piece in text.split(",")) if s]
    if not items:
        raise argparse.ArgumentTypeError("users list is empty")
    try:
        users = [int(s) for s in items]
    except ValueError:
        raise argparse.ArgumentTypeError(f"users must be integers, got {text!r}") from None
    if any(u < 1 for u in users):
        raise argparse.ArgumentTypeError("user counts must be >= 1")
    return users


def _effective(config: RunConfig, args) -> tuple[int, int]:
    trials = args.trials if args.trials is not None else config.trials
    seed = args.seed if args.seed is not None else config.seed
    return trials, seed


def _required_rate(config: RunConfig, args) -> RatePolicy:
    if getattr(args, "rate", None) is not None:
        return RatePolicy(args.rate)
    if config.rate is not None:
        return config.rate
    raise ParameterError("no rate given: set rate_bpcu in the scenario or pass --rate")


def cmd_sweep_alpha(args) -> int:
    config = load_scenario_file(args.scenario)
    rate = _required_rate(config, args)
    trials, seed = _effective(config, args)
    scenario = config.scenario
    rows = []
    for a in np.linspace(ALPHA_MIN, ALPHA_MAX, args.grid):
        power = PowerPolicy(alpha=float(a), mode=CONCURRENT)
        mc = estimate_sum_throughput(scenario, rate, power, trials, seed)
        rows.append(
            [
                float(a),
                sum_throughput(scenario, rate, power, "exact"),
                sum_throughput(scenario, rate, power, "rational"),
                mc.mean,
                mc.std_error,
            ]
        )
    result = SweepResult(
        header=["alpha", "tau_exact", "tau_rational", "tau_mc", "tau_mc_se"], rows=rows
    )
    result.write_csv(args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _rate_range(text: str) -> tuple[float, float]:
    lo_text, sep, hi_text = text.partition(":")
    if not sep:
        raise ParameterError(f"sweep-rate needs --rate MIN:MAX, got {text!r}")
    try:
        lo, hi = float(lo_text), float(hi_text)
    except ValueError:
        raise ParameterError(f"sweep-rate needs numeric MIN:MAX, got {text!r}") from None
    if not 0.0 < lo < hi:
        raise ParameterError(f"need 0 < MIN < MAX, got {text!r}")
    return lo, hi


def cmd_sweep_rate(args) -> int:
    config = load_scenario_file(args.scenario)
    trials, seed = _effective(config, args)
    scenario, power = config.scenario, config.power
    lo, hi = _rate_range(args.rate)
    rates = [RatePolicy(float(r)) for r in np.linspace(lo, hi, args.grid)]
    gammas = [rp.gamma_th for rp in rates]

    header = ["rate"]
    columns = [[rp.rate_bpcu for rp in rates]]
    for n in args.users:
        scn = replace(scenario, num_users_1=n, num_users_2=n)
        tau_exact = [sum_throughput(scn, rp, power, "exact") for rp in rates]
        # one simulation pass per user count serves every rate on the grid
        c1, c2 = outage_counts(scn, power, gammas, trials, seed)
        share1, share2 = power.shares()
        tau_mc, tau_se = [], []
        for rp, k1, k2 in zip(rates, c1, c2):
            mean = 0.0
            var = 0.0
            for share, count in zip((share1, share2), (int(k1), int(k2))):
                if share == 0.0:
                    continue
                p = count / trials
                mean += (1.0 - p) * rp.rate_bpcu
                var += (rp.rate_bpcu**2) * p * (1.0 - p) / trials
            tau_mc.append(mean)
            tau_se.append(var**0.5)
        header += [f"tau_exact_u{n}", f"tau_mc_u{n}", f"tau_mc_se_u{n}"]
        columns += [tau_exact, tau_mc, tau_se]

    rows = [list(point) for point in zip(*columns)]
    SweepResult(header=header, rows=rows).write_csv(args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_optimize(args) -> int:
    config = load_scenario_file(args.scenario)
    scenario = config.scenario
    rate = _required_rate(config, args)
    stats = scenario.stats

    single_user = scenario.num_users_1 == 1 and scenario.num_users_2 == 1
    closed_form_valid = single_user or scenario.selection == ROUND_ROBIN
    if closed_form_valid:
        _print_kv("closed_form_alpha_star", alpha_star_closed_form(stats))
        _print_kv("closed_form_critical_rate_bpcu", critical_rate_closed_form(stats))
    else:
        print("closed_form_alpha_star = n/a (single-user or round-robin only)")
        print("closed_form_critical_rate_bpcu = n/a (single-user or round-robin only)")

    best = alpha_star_numeric(scenario, rate, tier=args.tier)
    crit = critical_rate_numeric(scenario, tier=args.tier)
    _print_kv("numeric_tier", args.tier)
    _print_kv("numeric_alpha_star", best.alpha)
    _print_kv("numeric_alpha_star_tau_bpcu", best.tau_bpcu)
    _print_kv("numeric_critical_rate_bpcu", crit.rate_bpcu)
    _print_kv("numeric_crossover_found", crit.crossover)

    # recommendation always uses the exact tier at the rate under consideration
    tau_conc = sum_throughput(
        scenario, rate, PowerPolicy(alpha=best.alpha, mode=CONCURRENT), "exact"
    )
    tau_s1 = sum_throughput(scenario, rate, PowerPolicy(mode=SINGLE_NETWORK_1), "exact")
    tau_s2 = sum_throughput(scenario, rate, PowerPolicy(mode=SINGLE_NETWORK_2), "exact")
    _print_kv("rate_bpcu", rate.rate_bpcu)
    _print_kv("tau_concurrent_bpcu", tau_conc)
    _print_kv("tau_single_network_1_bpcu", tau_s1)
    _print_kv("tau_single_network_2_bpcu", tau_s2)
    ranked = sorted(
        [(tau_conc, CONCURRENT), (tau_s1, SINGLE_NETWORK_1), (tau_s2, SINGLE_NETWORK_2)],
        reverse=True,
    )
    _print_kv("recommendation", ranked[0][1])
    return 0


def cmd_validate(args) -> int:
    config = load_scenario_file(args.scenario)
    trials, seed = _effective(config, args)
    scenario = config.scenario
    alphas = (0.1, 0.3, 0.5, 0.7, 0.9)
    rates = tuple(float(r) for r in np.linspace(0.5, 4.0, 5))

    passed = [0, 0]
    cells = 0
    for a in alphas:
        power = PowerPolicy(alpha=a, mode=CONCURRENT)
        for r in rates:
            rate = RatePolicy(r)
            cells += 1
            exact = outage_pair(scenario, rate, power, "exact")
            c1, c2 = outage_counts(scenario, power, [rate.gamma_th], trials, seed)
            for net, count in enumerate((int(c1[0]), int(c2[0]))):
                p = count / trials
                se = math.sqrt(p * (1.0 - p) / trials)
                if abs(p - exact[net]) < 3.0 * se:
                    passed[net] += 1

    # one unlucky cell per network is tolerated; 3*SE itself misses ~0.3%
    checks = [
        (
            f"outage-agreement-network-{net + 1}",
            passed[net] >= cells - 1,
            f"{passed[net]}/{cells} cells within 3*SE",
        )
        for net in (0, 1)
    ]
    checks.append(_singularity_check(scenario))
    checks.append(_reduction_check(scenario))

    all_ok = True
    for name, ok, detail in checks:
        print(f"check {name}: {'pass' if ok else 'FAIL'} ({detail})")
        all_ok = all_ok and ok
    print(f"validate: {'PASS' if all_ok else 'FAIL'}")
    return 0 if all_ok else 1


def _singularity_check(scenario) -> tuple[str, bool, str]:
    """Outage must vary smoothly as b_1 crosses a_1 (the removable singularity)."""
    s = scenario.stats
    rate = RatePolicy(1.0)
    base = OutageParams(
        num_users=1,
        lambda_main=s.lambda11,
        mu_own_p=s.mu1p,
        mu_other_p=s.mu2p,
        mu_cross=s.mu21,
        share=0.5,
        gamma_th=rate.gamma_th,
        rho=scenario.rho,
    )
    a1 = 1.0 + base.lambda_main * base.gamma_th / (base.mu_own_p * base.share * base.rho)
    # put b_1 right on the series-window boundary and straddle it from both
    # sides; a branch seam would show up as a jump far above the genuine
    # variation over the 2e-12 step
    x_target = a1 / base.gamma_th
    coeff = base.mu_other_p * base.lambda_main * (1.0 - base.share) / (base.mu_own_p * base.share)

    def outage_at(t_ratio: float) -> float:
        params = replace(base, mu_cross=coeff / (x_target * t_ratio))
        return outage_exact(params)

    jumps = []
    for side in (-1.0, 1.0):
        inside = outage_at(1.0 + side * 1e-6 * (1.0 - 1e-6))
        outside = outage_at(1.0 + side * 1e-6 * (1.0 + 1e-6))
        jumps.append(abs(inside - outside))
    spread = max(jumps)
    return ("singularity-continuity", spread < 1e-8, f"seam jump {spread:.3e}")


def _reduction_check(scenario) -> tuple[str, bool, str]:
    """With the whole ITL granted, outage must equal the no-cross-term sum."""
    s = scenario.stats
    rate = RatePolicy(2.0)
    n = scenario.num_users_1 if scenario.selection != ROUND_ROBIN else 1
    params = OutageParams(
        num_users=n,
        lambda_main=s.lambda11,
        mu_own_p=s.mu1p,
        mu_other_p=s.mu2p,
        mu_cross=s.mu21,
        share=1.0,
        gamma_th=rate.gamma_th,
        rho=scenario.rho,
    )
    got = outage_exact(params)
    slope = params.lambda_main * params.gamma_th / (params.mu_own_p * params.rho)
    expected = 1.0 - sum(
        math.comb(n, j) * (-1.0) ** (j + 1) / (1.0 + slope * j) for j in range(1, n + 1)
    )
    delta = abs(got - expected)
    return ("zero-cross-interference-reduction", delta < 1e-12, f"delta {delta:.3e}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itlshare",
        description=(
            "Outage and sum-throughput analysis of two underlay downlinks "
            "sharing one interference temperature limit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_out: bool):
        p.add_argument(
            "--scenario",
            required=True,
            metavar="PATH",
            help="scenario file path, or a bundled name such as fig2",
        )
        p.add_argument("--trials", type=int, default=None, help="override the file's trial count")
        p.add_argument("--seed", type=int, default=None, help="override the file's seed")
        if needs_out:
            p.add_argument("--out", required=True, metavar="PATH", help="output CSV path")

    p_alpha = sub.add_parser(
        "sweep-alpha", help="sum throughput versus the ITL fraction of network 1"
    )
    add_common(p_alpha, needs_out=True)
    p_alpha.add_argument("--rate", type=float, default=None, help="override the file's rate")
    p_alpha.add_argument("--grid", type=int, default=41, help="number of alpha points")
    p_alpha.set_defaults(func=cmd_sweep_alpha)

    p_rate = sub.add_parser(
        "sweep-rate", help="sum throughput versus rate for several user counts"
    )
    add_common(p_rate, needs_out=True)
    p_rate.add_argument(
        "--rate", required=True, metavar="MIN:MAX", help="rate range to sweep, e.g. 0.5:8"
    )
    p_rate.add_argument("--grid", type=int, default=16, help="number of rate points")
    p_rate.add_argument(
        "--users",
        type=_users_argument,
        default=[1, 3, 5, 7, 10],
        metavar="N1,N2,...",
        help="user counts applied to both networks (default 1,3,5,7,10)",
    )
    p_rate.set_defaults(func=cmd_sweep_rate)

    p_opt = sub.add_parser(
        "optimize", help="closed-form and numeric optimal split, plus the crossover rate"
    )
    add_common(p_opt, needs_out=False)
    p_opt.add_argument("--rate", type=float, default=None, help="override the file's rate")
    p_opt.add_argument(
        "--tier",
        choices=list(analytics.TIERS),
        default="rational",
        help="formula tier driving the numeric searches (default rational)",
    )
    p_opt.set_defaults(func=cmd_optimize)

    p_val = sub.add_parser(
        "validate", help="cross-check the formulas against the simulator on a grid"
    )
    add_common(p_val, needs_out=False)
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ItlShareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
