"""Shared fixtures: a per-session character-table cache.

The cache makes repeated classifications of the same group cheap, which
the pipeline and acceptance tests rely on."""

import pytest


@pytest.fixture(scope="session")
def table_cache(tmp_path_factory):
    return str(tmp_path_factory.mktemp("table-cache"))
