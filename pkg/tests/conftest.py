from __future__ import annotations

import pytest

from schubcode.codecore import build_code
from schubcode.mldecoder import DecoderTable

# (q, m, alpha) used throughout: the four small Schubert configurations
CONFIGS = [(2, 4, (2, 4)), (2, 5, (2, 5)), (2, 5, (3, 5)), (3, 4, (2, 4))]

_codes: dict = {}
_tables: dict = {}


def get_code(q, m, alpha=None, ell=2):
    key = (q, m, ell, alpha)
    if key not in _codes:
        _codes[key] = build_code(q, m, ell, alpha)
    return _codes[key]


def get_table(q, m, alpha):
    key = (q, m, alpha)
    if key not in _tables:
        _tables[key] = DecoderTable.build(get_code(q, m, alpha))
    return _tables[key]


@pytest.fixture(scope="session")
def code24():
    return get_code(2, 4, (2, 4))


@pytest.fixture(scope="session")
def table24():
    return get_table(2, 4, (2, 4))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS, key=lambda k: (int(k.strip().rstrip('abcd')), k)):
            terminalreporter.write_line(RESULTS[key])
