import pytest

from pulsetags.datasets import load_background_vectors, load_pulse_corpus, planted_labels
from pulsetags.pipeline import PipelineParams, analyze

# (criterion, passed, detail) rows filled by test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")


@pytest.fixture(scope="session")
def pulse_corpus():
    return load_pulse_corpus()


@pytest.fixture(scope="session")
def pulse_labels():
    return planted_labels()


@pytest.fixture(scope="session")
def background_model():
    return load_background_vectors()


@pytest.fixture
def pulse_bundle(pulse_corpus, background_model):
    return analyze(pulse_corpus, background_model, PipelineParams(deterministic=True))
