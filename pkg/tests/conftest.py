from __future__ import annotations

import sys
from functools import lru_cache

import pytest

from srkbounds.core import normalize_params
from srkbounds.oracle import build_graph


@lru_cache(maxsize=None)
def cached_graph(q: int, n: tuple[int, ...], m: tuple[int, ...]):
    return build_graph(normalize_params(q, n, m))


@pytest.fixture
def graph():
    return cached_graph


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "STATUS_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
