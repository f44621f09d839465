import csv
from pathlib import Path

import pytest

from permsimple.perm_core import Permutation

DATA = Path(__file__).parent / "data"

# acceptance lines collected by test_acceptance, echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def word_to_perm(word: str, n: int) -> Permutation:
    """Product of generators written as digits ("e" is the identity)."""
    w = list(range(1, n + 1))
    for ch in word.replace("e", ""):
        i = int(ch)
        w[i - 1], w[i] = w[i], w[i - 1]
    return Permutation(tuple(w))


@pytest.fixture(scope="session")
def figure_rows():
    with open(DATA / "gamma_bs6_figure.csv") as fh:
        return list(csv.DictReader(fh))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
