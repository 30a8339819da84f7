import pytest

from helpers import ACCEPTANCE_RESULTS
from hindi_qnlp.lexicon import seed_lexicon, toy_lexicon


@pytest.fixture(scope="session")
def seed_lex():
    return seed_lexicon()


@pytest.fixture(scope="session")
def toy_lex():
    return toy_lexicon()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
