import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("MODLIE_HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def P():
    from modlie.poisson_deform import build_P

    return build_P()


@pytest.fixture(scope="session")
def D():
    from modlie.poisson_deform import build_D

    return build_D()


@pytest.fixture(scope="session")
def W13():
    from modlie.poisson_deform import build_W13

    return build_W13()


@pytest.fixture(scope="session")
def phi():
    from modlie.poisson_deform import build_phi

    return build_phi()


@pytest.fixture(scope="session")
def psi():
    from modlie.poisson_deform import build_psi

    return build_psi()


@pytest.fixture(scope="session")
def so3():
    """[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2 over GF(5)."""
    from modlie.algebra_core import AlgebraStructure

    entries = []
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        entries += [(i, j, k, 1), (j, i, k, -1)]
    return AlgebraStructure.from_entries(5, 3, entries, ("e1", "e2", "e3"), "so3")


@pytest.fixture
def rng():
    return np.random.default_rng(20140111)


# one summary line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
