import math

import pytest
from hypothesis import given, strategies as st

import itlshare as it
from itlshare.errors import ParameterError, ScenarioFileError

GEOMETRY_TEXT = """
# comment line
d11 = 2
d22 = 1
r12 = 4
r21 = 3
r1P = 3
r2P = 3
phi = 3
"""


class TestGammaThreshold:
    def test_rate_one(self):
        assert it.gamma_threshold(1.0) == 1.0

    def test_rate_two(self):
        assert it.gamma_threshold(2.0) == 3.0

    def test_near_critical_rate_threshold(self):
        # the crossover rate around 3.97 corresponds to a threshold near 14.7
        assert abs(it.gamma_threshold(3.9724) - 14.697) < 0.01

    @given(st.floats(min_value=1e-3, max_value=13.0))
    def test_round_trip(self, rate):
        gamma = it.gamma_threshold(rate)
        assert math.isclose(math.log2(1.0 + gamma), rate, rel_tol=1e-12)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_invalid_rate(self, bad):
        with pytest.raises(ParameterError):
            it.gamma_threshold(bad)


class TestIpLinear:
    def test_20_db(self):
        assert it.ip_linear(20.0) == 100.0

    def test_10_db(self):
        assert it.ip_linear(10.0) == 10.0

    def test_fractional(self):
        assert math.isclose(it.ip_linear(25.0), 10.0**2.5, rel_tol=1e-15)


class TestGeometry:
    def test_power_law_mapping(self):
        geom = it.Geometry(d11=2.0, d22=1.0, r12=4.0, r21=3.0, r1p=3.0, r2p=3.0, phi=3.0)
        stats = it.channel_stats_from_geometry(geom)
        assert stats.lambda11 == 8.0
        assert stats.lambda22 == 1.0
        assert stats.mu12 == 64.0
        assert stats.mu21 == 27.0
        assert stats.mu1p == 27.0
        assert stats.mu2p == 27.0

    def test_unit_distances_give_unit_rates(self):
        geom = it.Geometry(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, phi=3.0)
        stats = it.channel_stats_from_geometry(geom)
        assert all(
            getattr(stats, f) == 1.0
            for f in ("lambda11", "lambda22", "mu12", "mu21", "mu1p", "mu2p")
        )

    @pytest.mark.parametrize("bad", [0.0, -2.0, math.inf, math.nan])
    def test_invalid_distance(self, bad):
        with pytest.raises(ParameterError):
            it.Geometry(d11=bad, d22=1.0, r12=1.0, r21=1.0, r1p=1.0, r2p=1.0)

    def test_invalid_exponent(self):
        with pytest.raises(ParameterError):
            it.Geometry(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, phi=0.0)


class TestChannelStatistics:
    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ParameterError):
            it.ChannelStatistics(0.0, 1.0, 1.0, 1.0, 1.0, 1.0)

    def test_rejects_nan(self):
        with pytest.raises(ParameterError):
            it.ChannelStatistics(1.0, math.nan, 1.0, 1.0, 1.0, 1.0)


class TestScenario:
    def test_rho(self):
        stats = it.ChannelStatistics(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        assert it.Scenario(stats=stats, ip_db=20.0).rho == 100.0

    @pytest.mark.parametrize("bad", [0, -1, 1.5, True])
    def test_invalid_user_counts(self, bad):
        stats = it.ChannelStatistics(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        with pytest.raises(ParameterError):
            it.Scenario(stats=stats, num_users_1=bad)

    def test_invalid_selection(self):
        stats = it.ChannelStatistics(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        with pytest.raises(ParameterError):
            it.Scenario(stats=stats, selection="random")

    def test_noise_power_is_pinned(self):
        stats = it.ChannelStatistics(1.0, 1.0, 1.0, 1.0, 1.0, 1.0)
        with pytest.raises(ParameterError):
            it.Scenario(stats=stats, noise_power=2.0)


class TestRatePolicy:
    def test_threshold_is_derived(self):
        policy = it.RatePolicy(2.0)
        assert policy.gamma_th == 3.0

    def test_zero_rate_is_degenerate_but_legal(self):
        assert it.RatePolicy(0.0).gamma_th == 0.0

    def test_negative_rate_rejected(self):
        with pytest.raises(ParameterError):
            it.RatePolicy(-0.5)


class TestPowerPolicy:
    def test_concurrent_shares(self):
        assert it.PowerPolicy(alpha=0.3).shares() == (0.3, 0.7)

    def test_single_network_shares(self):
        assert it.PowerPolicy(mode=it.SINGLE_NETWORK_1).shares() == (1.0, 0.0)
        assert it.PowerPolicy(mode=it.SINGLE_NETWORK_2).shares() == (0.0, 1.0)

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.7, math.nan])
    def test_concurrent_alpha_bounds(self, bad):
        with pytest.raises(ParameterError):
            it.PowerPolicy(alpha=bad)

    def test_invalid_mode(self):
        with pytest.raises(ParameterError):
            it.PowerPolicy(mode="duplex")


class TestParseScenarioText:
    def test_geometry_only(self):
        config = it.parse_scenario_text(GEOMETRY_TEXT)
        assert config.scenario.stats.lambda11 == 8.0
        assert config.scenario.stats.mu21 == 27.0
        # defaults
        assert config.scenario.num_users_1 == 1
        assert config.scenario.ip_db == 20.0
        assert config.power.mode == it.CONCURRENT
        assert config.power.alpha == 0.5
        assert config.rate is None
        assert config.trials == 1_000_000
        assert config.seed == 1234

    def test_explicit_rates_only(self):
        text = """
        lambda11 = 8
        lambda22 = 1
        mu12 = 64
        mu21 = 27
        mu1P = 27
        mu2P = 27
        rate_bpcu = 1.5
        """
        config = it.parse_scenario_text(text)
        assert config.scenario.stats.mu12 == 64.0
        assert config.rate.rate_bpcu == 1.5

    def test_consistent_double_specification_prefers_geometry(self):
        text = GEOMETRY_TEXT + """
        lambda11 = 8
        lambda22 = 1
        mu12 = 64
        mu21 = 27
        mu1P = 27
        mu2P = 27
        """
        config = it.parse_scenario_text(text)
        assert config.scenario.stats == it.ChannelStatistics(8.0, 1.0, 64.0, 27.0, 27.0, 27.0)

    def test_contradictory_double_specification(self):
        text = GEOMETRY_TEXT + """
        lambda11 = 9
        lambda22 = 1
        mu12 = 64
        mu21 = 27
        mu1P = 27
        mu2P = 27
        """
        with pytest.raises(ScenarioFileError, match="contradicts"):
            it.parse_scenario_text(text)

    def test_unknown_key(self):
        with pytest.raises(ScenarioFileError, match="unknown key 'd33'"):
            it.parse_scenario_text(GEOMETRY_TEXT + "\nd33 = 1\n")

    def test_duplicate_key(self):
        with pytest.raises(ScenarioFileError, match="duplicate"):
            it.parse_scenario_text(GEOMETRY_TEXT + "\nd11 = 2\n")

    def test_incomplete_geometry_names_missing_keys(self):
        text = "d11 = 2\nd22 = 1\n"
        with pytest.raises(ScenarioFileError, match="missing"):
            it.parse_scenario_text(text)

    def test_no_channel_specification(self):
        with pytest.raises(ScenarioFileError, match="channel specification missing"):
            it.parse_scenario_text("L = 2\n")

    def test_malformed_line(self):
        with pytest.raises(ScenarioFileError, match="expected 'key = value'"):
            it.parse_scenario_text(GEOMETRY_TEXT + "\njust some words\n")

    def test_non_integer_trials(self):
        with pytest.raises(ScenarioFileError, match="expected an integer"):
            it.parse_scenario_text(GEOMETRY_TEXT + "\ntrials = 1e6\n")

    def test_invalid_mode_is_a_file_error(self):
        with pytest.raises(ScenarioFileError):
            it.parse_scenario_text(GEOMETRY_TEXT + "\nmode = duplex\n")

    def test_values_survive_round_trip(self):
        text = GEOMETRY_TEXT + """
        L = 3
        M = 7
        ip_db = 15
        rate_bpcu = 2.5
        alpha = 0.25
        mode = single-network-2
        selection = round-robin
        trials = 5000
        seed = 99
        """
        config = it.parse_scenario_text(text)
        assert config.scenario.num_users_1 == 3
        assert config.scenario.num_users_2 == 7
        assert config.scenario.ip_db == 15.0
        assert config.scenario.selection == it.ROUND_ROBIN
        assert config.power.mode == it.SINGLE_NETWORK_2
        assert config.power.alpha == 0.25
        assert config.rate.rate_bpcu == 2.5
        assert config.trials == 5000
        assert config.seed == 99


class TestBundledScenarios:
    def test_names(self):
        assert set(it.bundled_scenario_names()) >= {"fig2", "fig3a", "fig3b", "fig4"}

    @pytest.mark.parametrize("name", ["fig2", "fig3a", "fig3b", "fig4"])
    def test_all_load(self, name):
        config = it.load_scenario_file(name)
        assert config.trials >= 1000

    def test_fig2_values(self, fig2):
        assert fig2.scenario.stats == it.ChannelStatistics(8.0, 1.0, 64.0, 27.0, 27.0, 27.0)
        assert fig2.scenario.ip_db == 20.0
        assert fig2.rate.rate_bpcu == 1.0

    def test_fig3a_values(self, fig3a):
        stats = fig3a.scenario.stats
        assert (stats.lambda11, stats.lambda22) == (1.0, 8.0)
        assert (stats.mu12, stats.mu21) == (27.0, 3.5**3)
        assert (stats.mu1p, stats.mu2p) == (64.0, 27.0)
        assert fig3a.scenario.ip_db == 10.0

    def test_fig3b_values(self, fig3b):
        stats = fig3b.scenario.stats
        assert (stats.mu1p, stats.mu2p) == (27.0, 64.0)
        assert fig3b.scenario.ip_db == 25.0
        assert fig3b.rate.rate_bpcu == 2.0

    def test_fig4_is_symmetric(self, fig4):
        stats = fig4.scenario.stats
        assert stats.lambda11 == stats.lambda22 == 1.0
        assert stats.mu12 == stats.mu21 == stats.mu1p == stats.mu2p == 27.0

    def test_missing_file_raises(self, tmp_path):
        with pytest.raises(ScenarioFileError, match="not found"):
            it.load_scenario_file(tmp_path / "nope.scn")

    def test_unknown_bundled_name_raises(self):
        with pytest.raises(ScenarioFileError, match="no bundled scenario"):
            it.load_scenario_file("fig99")
