import pytest
from hypothesis import settings

import itlshare as it

# property tests should behave like the rest of the suite: same examples
# every run, no wall-clock flakiness on slow machines
settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")


@pytest.fixture(scope="session")
def fig2():
    return it.load_scenario_file("fig2")


@pytest.fixture(scope="session")
def fig3a():
    return it.load_scenario_file("fig3a")


@pytest.fixture(scope="session")
def fig3b():
    return it.load_scenario_file("fig3b")


@pytest.fixture(scope="session")
def fig4():
    return it.load_scenario_file("fig4")


@pytest.fixture
def make_params():
    """Factory for OutageParams with sane defaults, override what a test needs."""

    def factory(**overrides):
        base = dict(
            num_users=1,
            lambda_main=1.0,
            mu_own_p=1.0,
            mu_other_p=1.0,
            mu_cross=1.0,
            share=0.5,
            gamma_th=1.0,
            rho=100.0,
        )
        base.update(overrides)
        return it.OutageParams(**base)

    return factory
