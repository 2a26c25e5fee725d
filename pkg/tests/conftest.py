import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ratmap import fixtures  # noqa: E402
from ratmap.cdga import FiniteCDGA  # noqa: E402
from ratmap.mapmodel import finite_model_from_minimal, top_cohomology_degree  # noqa: E402


def finite_of(name):
    """Finite model of a bundled space, computed from its Sullivan model if needed."""
    M = fixtures.load(name)
    if isinstance(M, FiniteCDGA):
        return M
    n = top_cohomology_degree(M, sum(g.degree for g in M.generators))
    return finite_model_from_minimal(M, n)


def word_data(M):
    """Generator degrees and differential in the oracles' word form."""
    degrees = [g.degree for g in M.generators]
    dvalues = {i: oracles.from_terms(p.terms) for i, p in M.d.values.items()}
    return degrees, dvalues


@pytest.fixture
def fixture_dir():
    return Path(fixtures.path("S4")).parent


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
