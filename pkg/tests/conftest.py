import warnings

import pytest

from cubicspan.harness import CorpusFilter, field_for_order, sample_corpus
from cubicspan.span import generator_status

ACCEPTANCE_ORDERS = (8, 16, 17)
ACCEPTANCE_SEED = 2024
ACCEPTANCE_COUNT = 50

_results: dict[int, tuple[str, str, str]] = {}


class Recorder:
    def __call__(self, number: int, title: str, ok: bool, detail: str = "") -> None:
        _results[number] = ("PASS" if ok else "FAIL", title, detail)


@pytest.fixture
def criterion():
    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, title, detail = _results[number]
        line = f"[{status}] criterion {number:2d}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)


class CorpusEntry:
    def __init__(self, surface):
        self.surface = surface
        self._status = None

    @property
    def status(self):
        """Full per-point generator status, computed once."""
        if self._status is None:
            self._status = generator_status(self.surface)
        return self._status


@pytest.fixture(scope="session")
def acceptance_corpus():
    """q -> list of CorpusEntry: smooth surfaces with at least one K-line, fixed seed."""
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for q in ACCEPTANCE_ORDERS:
            c = sample_corpus(field_for_order(q), CorpusFilter(min_klines=1), ACCEPTANCE_COUNT,
                              seed=ACCEPTANCE_SEED)
            out[q] = [CorpusEntry(S) for S in c.surfaces]
    return out
