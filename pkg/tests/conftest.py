import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from umlab.cli import RunConfig, run_command  # noqa: E402

QUINTIC = "x*(x-1)*(x-2)*(x-3)*(x-4)"
STAMP = "2000-01-01T00:00:00+00:00"


def emit(command: str, **kwargs):
    """Run a subcommand in-process and return (outcome, document)."""
    outcome = run_command(command, RunConfig(**kwargs))
    if outcome.doc is not None:
        outcome.doc["generated_at"] = STAMP  # outside the hash
    return outcome, outcome.doc


@pytest.fixture(scope="session")
def l_doc():
    return emit("certify-l", range="1..9")[1]


@pytest.fixture(scope="session")
def root_doc():
    return emit("construct-um-root", poly=QUINTIC, m=2, range="1..7")[1]


@pytest.fixture(scope="session")
def translate_doc():
    return emit("construct-um-translate", poly="x^4 - x - 1", range="1..8")[1]


@pytest.fixture(scope="session")
def gap_doc():
    return emit("gap-scan", poly=QUINTIC, m=2, range="1..7", coeff_bound=4)[1]


@pytest.fixture(scope="session")
def small_docs():
    """Every quick document kind, keyed by a label."""
    return {
        "genus": emit("genus", poly="x^5 - 4x^3 + 2x", n=2)[1],
        "hypotheses": emit("genus", poly=QUINTIC, m=2)[1],
        "binomial": emit("binomial", m=4, a="-4")[1],
        "binomial-irreducible": emit("binomial", m=2, a="105/32")[1],
        "galois": emit("galois-cert", poly="x^4 - x - 1", primes=200)[1],
        "galois-inconclusive": emit("galois-cert", poly="x^4 + x^3 + x^2 + x + 1", primes=200)[1],
        "wilms": emit("wilms", poly="x^4 - x - 1")[1],
        "wilms-refused": emit("wilms", poly="x^4 - 2x^2 + 9")[1],
        "wilms-quadratic": emit("wilms", poly="x^2 + 1")[1],
    }


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
