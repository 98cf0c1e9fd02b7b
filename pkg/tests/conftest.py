import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_pytest_config = None


def pytest_configure(config):
    global _pytest_config
    _pytest_config = config


@pytest.fixture(scope="session")
def puzzle_result():
    from aspcomp.puzzle import solve_puzzle

    return solve_puzzle()
