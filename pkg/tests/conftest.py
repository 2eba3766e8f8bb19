"""Shared fixtures: one memoized pipeline store for the whole session.

The heavy objects (automorphism listings, J/H/T for the order-625
presets) are computed once and shared by every test module through the
``runs`` store; tests must treat them as read-only.
"""

from __future__ import annotations

import pytest

from holo.repro import _Runs


@pytest.fixture(scope="session")
def runs() -> _Runs:
    return _Runs()


@pytest.fixture(scope="session")
def gp3(runs):
    return runs.full(name="gp", p=3)


@pytest.fixture(scope="session")
def gp5(runs):
    return runs.full(name="gp", p=5)


@pytest.fixture(scope="session")
def hp3(runs):
    return runs.full(name="hp", p=3)


@pytest.fixture(scope="session")
def hp5(runs):
    return runs.full(name="hp", p=5)


@pytest.fixture(scope="session")
def hp7(runs):
    return runs.full(name="hp", p=7)


@pytest.fixture(scope="session")
def free23(runs):
    return runs.full(name="free_c2_exp_p", p=3, n=2)


@pytest.fixture(scope="session")
def free25(runs):
    return runs.full(name="free_c2_exp_p", p=5, n=2)


@pytest.fixture(scope="session")
def free33(runs):
    return runs.free_delta(3, 3)


@pytest.fixture(scope="session")
def abelians(runs):
    return {
        "c9": runs.full(name="abelian", factors=[9]),
        "c25": runs.full(name="abelian", factors=[25]),
        "c27": runs.full(name="abelian", factors=[27]),
        "c3x3": runs.full(name="abelian", factors=[3, 3]),
    }
