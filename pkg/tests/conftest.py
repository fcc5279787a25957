from __future__ import annotations

import pytest

from cychilb.context import TripleContext

_CACHE: dict = {}


def get_ctx(s: int, n: int, r: int) -> TripleContext:
    key = (s, n, r)
    if key not in _CACHE:
        _CACHE[key] = TripleContext(s, n, r)
    return _CACHE[key]


@pytest.fixture
def ctx_for():
    """Session-wide cache of per-triple contexts; fans and tables are
    computed once no matter how many tests touch a triple."""
    return get_ctx
