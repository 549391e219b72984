from __future__ import annotations

import pytest

from jspg.chardata import load_resources
from jspg.charsim import CharSimCache

from goldens import write_golden_pinyin


@pytest.fixture(scope="session")
def golden_table(tmp_path_factory):
    """Resource table holding only the worked-example pinyin rows."""
    root = tmp_path_factory.mktemp("golden-resources")
    write_golden_pinyin(root / "pinyin.tsv")
    return load_resources(root / "pinyin.tsv")


@pytest.fixture(scope="session")
def golden_cache(golden_table):
    return CharSimCache(golden_table)


@pytest.fixture(scope="session")
def golden_resources_dir(tmp_path_factory):
    """Directory form of the worked-example table, for CLI runs."""
    root = tmp_path_factory.mktemp("golden-resources-cli")
    write_golden_pinyin(root / "pinyin.tsv")
    return root
