"""Shared pytest configuration: deterministic, time-boxed hypothesis runs."""

import pytest
from hypothesis import settings

settings.register_profile(
    "suite", max_examples=25, derandomize=True, deadline=None
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def example_results():
    """Run the worked-example regression suite once per session."""
    from desirability import fixtures

    return {result.name: result for result in fixtures.run_all()}
