from __future__ import annotations

from functools import lru_cache

import pytest

from healie.config import load_config

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def config(name: str, cocycle: bool = True):
    return load_config(name, hamiltonian_cocycle=cocycle)


@pytest.fixture(scope="session")
def sl2u():
    return config("sl2_untwisted")


@pytest.fixture(scope="session")
def sl2t():
    return config("sl2_twisted")


@pytest.fixture(scope="session")
def sl3t():
    return config("sl3_twisted")


@pytest.fixture(scope="session")
def klein():
    return config("sl2_klein")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
