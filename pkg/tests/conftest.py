import os
import time
from pathlib import Path

import pytest

from yellowstone import VariantConfig, Domain, generate
from yellowstone.bfile import read_bfile

DATA = Path(__file__).parent / "data"

# YELLOWSTONE_FAST=1 skips the million-term-and-up checks during development;
# the default run executes everything at full scale.
FULL_SCALE = os.environ.get("YELLOWSTONE_FAST", "") != "1"

# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

require_full_scale = pytest.mark.skipif(
    not FULL_SCALE, reason="full-scale run disabled via YELLOWSTONE_FAST=1"
)


@pytest.fixture(scope="session")
def golden300():
    with open(DATA / "a098550_first300.txt") as fh:
        first, values = read_bfile(fh)
    assert first == 1 and len(values) == 300
    return values


@pytest.fixture(scope="session")
def state300():
    return generate(n=300)


@pytest.fixture(scope="session")
def state3k():
    return generate(n=3000)


@pytest.fixture(scope="session")
def state100k():
    return generate(n=10**5)


@pytest.fixture(scope="session")
def state1m_timed():
    if not FULL_SCALE:
        pytest.skip("needs the 10^6 state (full-scale run)")
    t0 = time.perf_counter()
    state = generate(n=10**6)
    return state, time.perf_counter() - t0


@pytest.fixture(scope="session")
def state1m(state1m_timed):
    return state1m_timed[0]


@pytest.fixture(scope="session")
def state10m_timed():
    if not FULL_SCALE:
        pytest.skip("needs the 10^7 state (full-scale run)")
    t0 = time.perf_counter()
    state = generate(n=10**7)
    return state, time.perf_counter() - t0


@pytest.fixture(scope="session")
def odd_state3k():
    return generate(VariantConfig(start_terms=(1, 3, 5), domain=Domain.ODD_ONLY), 3000)
