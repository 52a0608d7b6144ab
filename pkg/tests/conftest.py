from __future__ import annotations

import pytest

from sunmtc.modular import ModularDatum, modular_datum


class DatumCache:
    """Session-wide cache of assembled modular data, keyed by (N, k)."""

    def __init__(self) -> None:
        self._store: dict[tuple[int, int], ModularDatum] = {}

    def get(self, N: int, k: int) -> ModularDatum:
        key = (N, k)
        if key not in self._store:
            self._store[key] = modular_datum(N, k)
        return self._store[key]


@pytest.fixture(scope="session")
def datum_cache() -> DatumCache:
    return DatumCache()
