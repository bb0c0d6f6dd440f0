"""Physical configuration of two interference-temperature-limited downlinks.

Two secondary transmitters reuse a primary band under a shared
interference temperature limit (ITL). Transmitter 1 serves L candidate
users, transmitter 2 serves M, and each link gain is an independent
exponential variate. Distances are unitless; a squared channel gain over
distance d has exponential rate d**phi (mean gain d**-phi), so geometry
enters only through the six rates collected in ChannelStatistics.

Noise power is fixed to 1 and the ITL is given in dB relative to it.
This costs no generality: every downstream quantity depends on the limit
and the noise only through their ratio rho.
"""

from __future__ import annotations

import importlib.resources
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParameterError, ScenarioFileError

# power-sharing modes
CONCURRENT = "concurrent"
SINGLE_NETWORK_1 = "single-network-1"
SINGLE_NETWORK_2 = "single-network-2"
MODES = (CONCURRENT, SINGLE_NETWORK_1, SINGLE_NETWORK_2)

# user-selection disciplines
BEST_USER = "best-user"
ROUND_ROBIN = "round-robin"
SELECTIONS = (BEST_USER, ROUND_ROBIN)


def _require_positive_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ParameterError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Geometry:
    """Node layout: the six link distances and the path-loss exponent.

    d11, d22: transmitter-to-served-user distances of networks 1 and 2.
    r12, r21: cross distances (transmitter of one network to the other
    network's receiver). r1p, r2p: distances to the primary receiver
    whose interference budget both transmitters share.
    """

    d11: float
    d22: float
    r12: float
    r21: float
    r1p: float
    r2p: float
    phi: float = 3.0

    def __post_init__(self):
        for name in ("d11", "d22", "r12", "r21", "r1p", "r2p", "phi"):
            _require_positive_finite(name, getattr(self, name))


@dataclass(frozen=True)
class ChannelStatistics:
    """Exponential rates of the six squared channel gains.

    lambda11 and lambda22 are the served links, mu12 and mu21 the
    cross-interference links (transmitter 1 into network 2's receiver
    and vice versa), mu1p and mu2p the links to the primary receiver.
    Mean gain is the reciprocal of the rate.
    """

    lambda11: float
    lambda22: float
    mu12: float
    mu21: float
    mu1p: float
    mu2p: float

    def __post_init__(self):
        for name in ("lambda11", "lambda22", "mu12", "mu21", "mu1p", "mu2p"):
            _require_positive_finite(name, getattr(self, name))


def channel_stats_from_geometry(geometry: Geometry) -> ChannelStatistics:
    """Map distances to exponential rates via the power law rate = d**phi."""
    p = geometry.phi
    return ChannelStatistics(
        lambda11=geometry.d11**p,
        lambda22=geometry.d22**p,
        mu12=geometry.r12**p,
        mu21=geometry.r21**p,
        mu1p=geometry.r1p**p,
        mu2p=geometry.r2p**p,
    )


def gamma_threshold(rate_bpcu: float) -> float:
    """SINR threshold 2**R - 1 below which a rate-R codeword is in outage."""
    rate_bpcu = float(rate_bpcu)
    if not math.isfinite(rate_bpcu) or rate_bpcu <= 0.0:
        raise ParameterError(f"rate must be positive and finite, got {rate_bpcu!r}")
    return 2.0**rate_bpcu - 1.0


def ip_linear(ip_db: float) -> float:
    """Interference temperature limit in linear scale, 10**(ip_db / 10)."""
    return 10.0 ** (float(ip_db) / 10.0)


@dataclass(frozen=True)
class Scenario:
    """One solvable system instance: channel statistics plus operating knobs."""

    stats: ChannelStatistics
    num_users_1: int = 1  # L, candidate receivers of network 1
    num_users_2: int = 1  # M, candidate receivers of network 2
    ip_db: float = 20.0
    noise_power: float = 1.0
    selection: str = BEST_USER

    def __post_init__(self):
        for name in ("num_users_1", "num_users_2"):
            n = getattr(self, name)
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise ParameterError(f"{name} must be an integer >= 1, got {n!r}")
        if not math.isfinite(float(self.ip_db)):
            raise ParameterError(f"ip_db must be finite, got {self.ip_db!r}")
        if self.noise_power != 1.0:
            # the ITL is calibrated against unit noise; rescale rho instead
            raise ParameterError("noise_power is fixed to 1.0 in this model")
        if self.selection not in SELECTIONS:
            raise ParameterError(
                f"selection must be one of {SELECTIONS}, got {self.selection!r}"
            )

    @property
    def rho(self) -> float:
        """ITL-to-noise ratio in linear scale."""
        return ip_linear(self.ip_db) / self.noise_power


@dataclass(frozen=True)
class RatePolicy:
    """Fixed transmission rate in bits per channel use and its SINR threshold."""

    rate_bpcu: float
    gamma_th: float = field(init=False)

    def __post_init__(self):
        r = float(self.rate_bpcu)
        if not math.isfinite(r) or r < 0.0:
            raise ParameterError(f"rate_bpcu must be >= 0 and finite, got {r!r}")
        object.__setattr__(self, "rate_bpcu", r)
        object.__setattr__(self, "gamma_th", 2.0**r - 1.0)


@dataclass(frozen=True)
class PowerPolicy:
    """How the interference budget is split between the two transmitters.

    In concurrent mode network 1 gets the fraction alpha of the ITL and
    network 2 the remainder. In the single-network modes one transmitter
    uses the whole budget and the other stays silent; alpha is ignored.
    """

    alpha: float = 0.5
    mode: str = CONCURRENT

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        a = float(self.alpha)
        if self.mode == CONCURRENT and not (math.isfinite(a) and 0.0 < a < 1.0):
            raise ParameterError(
                f"alpha must lie strictly inside (0, 1) in concurrent mode, got {a!r}"
            )
        object.__setattr__(self, "alpha", a)

    def shares(self) -> tuple[float, float]:
        """ITL fraction granted to each transmitter; a silent one gets 0."""
        if self.mode == CONCURRENT:
            return self.alpha, 1.0 - self.alpha
        if self.mode == SINGLE_NETWORK_1:
            return 1.0, 0.0
        return 0.0, 1.0


@dataclass(frozen=True)
class RunConfig:
    """Everything a scenario file specifies: the system, policies, and run knobs."""

    scenario: Scenario
    power: PowerPolicy
    rate: RatePolicy | None
    trials: int = 1_000_000
    seed: int = 1234

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ParameterError(f"trials must be a positive integer, got {self.trials!r}")
        if not isinstance(self.seed, int):
            raise ParameterError(f"seed must be an integer, got {self.seed!r}")


# scenario file keys, grouped by how they specify the channels
_GEOMETRY_KEYS = ("d11", "d22", "r12", "r21", "r1P", "r2P", "phi")
_RATE_KEYS = ("lambda11", "lambda22", "mu12", "mu21", "mu1P", "mu2P")
_INT_KEYS = ("L", "M", "trials", "seed")
_TEXT_KEYS = ("mode", "selection")
_SCALAR_KEYS = ("ip_db", "rate_bpcu", "alpha")
_ALL_KEYS = frozenset(_GEOMETRY_KEYS + _RATE_KEYS + _INT_KEYS + _TEXT_KEYS + _SCALAR_KEYS)

# relative tolerance when a file gives both distances and explicit rates
_CONSISTENCY_RTOL = 1e-9


def _parse_lines(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ScenarioFileError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key not in _ALL_KEYS:
            raise ScenarioFileError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ScenarioFileError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _coerce(key: str, value: str):
    try:
        if key in _INT_KEYS:
            return int(value)
        if key in _TEXT_KEYS:
            return value
        return float(value)
    except ValueError:
        kind = "an integer" if key in _INT_KEYS else "a number"
        raise ScenarioFileError(f"key {key!r}: expected {kind}, got {value!r}") from None


def _stats_from_entries(entries: dict) -> ChannelStatistics:
    have_geometry = [k for k in _GEOMETRY_KEYS if k in entries]
    have_rates = [k for k in _RATE_KEYS if k in entries]
    geometry_complete = len(have_geometry) == len(_GEOMETRY_KEYS)
    rates_complete = len(have_rates) == len(_RATE_KEYS)

    if not geometry_complete and not rates_complete:
        if have_geometry:
            missing = [k for k in _GEOMETRY_KEYS if k not in entries]
            raise ScenarioFileError(f"incomplete geometry: missing {', '.join(missing)}")
        if have_rates:
            missing = [k for k in _RATE_KEYS if k not in entries]
            raise ScenarioFileError(f"incomplete channel rates: missing {', '.join(missing)}")
        raise ScenarioFileError(
            "channel specification missing: give either the six distances plus phi "
            "or the six explicit rates"
        )

    from_geometry = None
    if geometry_complete:
        geometry = Geometry(
            d11=entries["d11"], d22=entries["d22"],
            r12=entries["r12"], r21=entries["r21"],
            r1p=entries["r1P"], r2p=entries["r2P"],
            phi=entries["phi"],
        )
        from_geometry = channel_stats_from_geometry(geometry)

    explicit = None
    if rates_complete:
        explicit = ChannelStatistics(
            lambda11=entries["lambda11"], lambda22=entries["lambda22"],
            mu12=entries["mu12"], mu21=entries["mu21"],
            mu1p=entries["mu1P"], mu2p=entries["mu2P"],
        )

    if from_geometry is not None and explicit is not None:
        for field, key in zip(
            ("lambda11", "lambda22", "mu12", "mu21", "mu1p", "mu2p"),
            ("lambda11", "lambda22", "mu12", "mu21", "mu1P", "mu2P"),
        ):
            a, b = getattr(from_geometry, field), getattr(explicit, field)
            if not math.isclose(a, b, rel_tol=_CONSISTENCY_RTOL, abs_tol=0.0):
                raise ScenarioFileError(
                    f"geometry-derived rate {field} = {a!r} contradicts explicit {key} = {b!r}"
                )
    # distances win when both forms are present and agree
    return from_geometry if from_geometry is not None else explicit


def parse_scenario_text(text: str) -> RunConfig:
    """Parse 'key = value' scenario text into a RunConfig.

    Unknown or duplicate keys are rejected rather than ignored so that a
    typo cannot silently fall back to a default.
    """
    entries = {k: _coerce(k, v) for k, v in _parse_lines(text).items()}
    stats = _stats_from_entries(entries)
    try:
        scenario = Scenario(
            stats=stats,
            num_users_1=entries.get("L", 1),
            num_users_2=entries.get("M", 1),
            ip_db=entries.get("ip_db", 20.0),
            selection=entries.get("selection", BEST_USER),
        )
        power = PowerPolicy(
            alpha=entries.get("alpha", 0.5),
            mode=entries.get("mode", CONCURRENT),
        )
        rate = RatePolicy(entries["rate_bpcu"]) if "rate_bpcu" in entries else None
        return RunConfig(
            scenario=scenario,
            power=power,
            rate=rate,
            trials=entries.get("trials", 1_000_000),
            seed=entries.get("seed", 1234),
        )
    except ParameterError as exc:
        raise ScenarioFileError(str(exc)) from exc


def bundled_scenario_names() -> list[str]:
    """Names of the scenario files shipped inside the package."""
    root = importlib.resources.files(__package__).joinpath("scenarios")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".scn"))


def bundled_scenario_text(name: str) -> str:
    fname = name if name.endswith(".scn") else name + ".scn"
    res = importlib.resources.files(__package__).joinpath("scenarios", fname)
    if not res.is_file():
        raise ScenarioFileError(
            f"no bundled scenario named {name!r}; available: {', '.join(bundled_scenario_names())}"
        )
    return res.read_text(encoding="utf-8")


def load_scenario_file(path: str | os.PathLike) -> RunConfig:
    """Load a scenario from a filesystem path, or by bundled name (e.g. 'fig2')."""
    p = Path(path)
    if p.is_file():
        try:
            return parse_scenario_text(p.read_text(encoding="utf-8"))
        except ScenarioFileError as exc:
            raise ScenarioFileError(f"{p}: {exc}") from None
    name = str(path)
    if "/" not in name and "\\" not in name:
        return parse_scenario_text(bundled_scenario_text(name))
    raise ScenarioFileError(f"scenario file not found: {p}")
