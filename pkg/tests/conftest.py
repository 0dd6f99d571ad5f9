"""Shared fixtures and the acceptance status reporter."""

from __future__ import annotations

import pytest

from mscoupling.sample import sample_graph
from sample_systems import make_chain3, make_single_edge, make_star4


@pytest.fixture
def demo():
    return sample_graph()


@pytest.fixture
def single_edge():
    return make_single_edge()


@pytest.fixture
def star4():
    return make_star4()


@pytest.fixture
def chain3():
    return make_chain3()


def pytest_runtest_logreport(report):
    """Print one pass/fail line per acceptance criterion."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    status = "PASS" if report.passed else "FAIL"
    print(f"\n[acceptance] {name}: {status}", flush=True)
