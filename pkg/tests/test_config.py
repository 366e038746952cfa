import pytest

from spinhecke.config import (
    ConfigError,
    Conventions,
    default_degree_cap,
    default_height,
    default_jobs,
    load_conventions,
    parse_conventions,
)

DOCUMENT = """
tau_action: {equal_even: 1, equal_odd: 1, unequal: 1}
braid: {sign: -1}
demazure: {even: -1, odd: 1}
automorphism_phi: {exponent: parity}
divided_power_shift: {unit: q_i}
"""


def test_shipped_conventions():
    conventions = load_conventions()
    assert conventions == Conventions()
    assert conventions.braid_sign == -1
    assert conventions.demazure_sign(0) == -1
    assert conventions.demazure_sign(1) == 1


def test_parse_conventions():
    assert parse_conventions(DOCUMENT) == Conventions()
    flipped = parse_conventions(DOCUMENT.replace("odd: 1}", "odd: -1}"))
    assert flipped.demazure_odd == -1
    assert parse_conventions(DOCUMENT.replace("sign: -1", "sign: 1")).braid_sign == 1


@pytest.mark.parametrize(
    "text",
    [
        DOCUMENT.replace("equal_odd: 1", "equal_odd: 2"),
        DOCUMENT.replace("exponent: parity", "exponent: sometimes"),
        DOCUMENT.replace("unit: q_i", "unit: q_j"),
        "- just a list",
        DOCUMENT.replace("demazure: {even: -1, odd: 1}", ""),
        DOCUMENT.replace("braid: {sign: -1}", ""),
        DOCUMENT.replace("sign: -1", "sign: 0"),
    ],
)
def test_bad_conventions(text):
    with pytest.raises(ConfigError):
        parse_conventions(text)


def test_conventions_from_a_file(tmp_path):
    path = tmp_path / "conventions.yaml"
    path.write_text(DOCUMENT.replace("unequal: 1", "unequal: -1"))
    assert load_conventions(str(path)).tau_unequal == -1


def test_env_defaults(monkeypatch):
    assert default_jobs() == 1
    assert default_degree_cap() == 12
    assert default_height() == 3
    monkeypatch.setenv("SPINHECKE_JOBS", "4")
    monkeypatch.setenv("SPINHECKE_DEGREE_CAP", "20")
    assert default_jobs() == 4
    assert default_degree_cap() == 20


@pytest.mark.parametrize("raw", ["abc", "0", "-3"])
def test_bad_env_values(monkeypatch, raw):
    monkeypatch.setenv("SPINHECKE_HEIGHT", raw)
    with pytest.raises(ConfigError):
        default_height()
