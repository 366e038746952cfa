import pytest
from click.testing import CliRunner

from spinhecke.rootdata import builtin_datum


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("SPINHECKE_JOBS", "SPINHECKE_DEGREE_CAP", "SPINHECKE_HEIGHT", "RUNNING_IN_PRODUCTION"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def osp12():
    return builtin_datum("osp12")


@pytest.fixture
def sl2():
    return builtin_datum("sl2")


@pytest.fixture
def b01():
    return builtin_datum("b01")


@pytest.fixture
def runner():
    return CliRunner()
