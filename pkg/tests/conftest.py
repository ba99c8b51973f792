import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from siegelsigns.precision import PrecisionContext  # noqa: E402
from siegelsigns.spinor import SpinorForm  # noqa: E402
from siegelsigns.synthetic import build_synthetic_eigenform, sk_lift  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()


@pytest.fixture(scope="session")
def sk10_small():
    """SK lift of the weight-18 eigenform, primes <= 100."""
    return sk_lift(10, 100)


@pytest.fixture(scope="session")
def synth_small(ctx):
    return build_synthetic_eigenform(11, 12, 100, min_gap=1e-3, ctx=ctx)


@pytest.fixture(scope="session")
def synth_small_2(ctx):
    return build_synthetic_eigenform(12, 20, 100, min_gap=1e-3, ctx=ctx)


@pytest.fixture
def spinor(ctx):
    def make(data):
        return SpinorForm(data, ctx)

    return make


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
