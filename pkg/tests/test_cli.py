import json

from spinhecke.cli import cli


def canonical(output):
    return json.dumps(json.loads(output), sort_keys=True, indent=2)


def test_validate(runner, snapshot):
    result = runner.invoke(cli, ["--builtin", "osp12", "validate"])
    assert result.exit_code == 0
    snapshot.assert_match(canonical(result.stdout), "result.json")


def test_validate_reports_a_failed_condition(runner):
    result = runner.invoke(cli, ["--builtin", "c6_violation", "validate"])
    assert result.exit_code == 1
    report = json.loads(result.stdout)
    assert "C6" in report["conditions"]
    assert not report["valid"]


def test_validate_needs_a_datum(runner):
    result = runner.invoke(cli, ["validate"])
    assert result.exit_code == 2


def test_fixtures(runner):
    result = runner.invoke(cli, ["fixtures"])
    assert result.exit_code == 0
    names = {row["name"] for row in json.loads(result.stdout)["fixtures"]}
    assert {"osp12", "b01", "c6_violation"} <= names


def test_pair(runner):
    result = runner.invoke(cli, ["--builtin", "osp12", "pair", "--left", "ii", "--right", "ii"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["form_agrees"]


def test_restrict(runner, snapshot):
    args = ["--builtin", "osp12", "restrict", "--word", "ii", "--left-weight", "i:1", "--right-weight", "i:1"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0
    snapshot.assert_match(canonical(result.stdout), "result.json")


def test_unknown_builtin(runner):
    result = runner.invoke(cli, ["--builtin", "sl17", "validate"])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "UnknownFixture"


def test_bad_weight(runner):
    result = runner.invoke(cli, ["--builtin", "b01", "gram", "--weight", "odd:x"])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "WeightError"


def test_jobs_must_be_positive(runner):
    result = runner.invoke(cli, ["--jobs", "0", "fixtures"])
    assert result.exit_code == 2


def test_bad_env_value(runner, monkeypatch):
    monkeypatch.setenv("SPINHECKE_JOBS", "abc")
    result = runner.invoke(cli, ["fixtures"])
    assert result.exit_code == 2
    assert json.loads(result.stdout)["error"] == "ConfigError"


def test_serre_check(runner):
    result = runner.invoke(cli, ["--builtin", "b01", "serre-check", "--i", "odd", "--j", "even"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["passed"]


def test_nilhecke_dims(runner):
    result = runner.invoke(cli, ["-D", "8", "nilhecke-dims", "--n", "2", "--parity", "1"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["D"] == 8
    assert len(report["cases"]) == 1


def test_relations_verify_single_weight(runner):
    result = runner.invoke(cli, ["--builtin", "b01", "-D", "4", "relations-verify", "--weight", "even:1,odd:1"])
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["results"]) == 1


def test_tsv_format(runner):
    result = runner.invoke(cli, ["--builtin", "osp12", "--format", "tsv", "validate"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert "datum\t\"osp12\"" in lines
    assert "valid\ttrue" in lines


def test_out_file(runner, tmp_path):
    path = tmp_path / "report.json"
    result = runner.invoke(cli, ["--builtin", "osp12", "--out", str(path), "validate"])
    assert result.exit_code == 0
    assert json.loads(path.read_text())["valid"]
