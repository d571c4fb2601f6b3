import os

import pytest
from hypothesis import HealthCheck, settings

from limcone.limits import DirectSystemSpec
from limcone.treeset import CHAIN, build_tree, kary

settings.register_profile(
    "default",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def c_growing():
    """C-type system with ranks 1, 2, 3, ..."""
    return DirectSystemSpec("C", (1,), "step1")


@pytest.fixture
def binary_chain(c_growing):
    """Root (2) splitting into (2,2) and (2,4), then chains."""
    return build_tree(c_growing, [[((2,), None)], [((2, 2), 0), ((2, 4), 0)]], CHAIN)


@pytest.fixture
def full_binary(c_growing):
    """One root, two children, then binary forever (child j appends coefficient j)."""
    return build_tree(c_growing, [[((2,), None)], [((2, 2), 0), ((2, 4), 0)]], kary(2))


@pytest.fixture
def chain_tree(c_growing):
    return build_tree(c_growing, [[((2,), None)], [((2, 2), 0)]], CHAIN)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
