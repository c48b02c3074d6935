"""End-to-end tests of the command-line interface."""

import json
import os

import pytest
from click.testing import CliRunner

from discdimer import fixtures as fx
from discdimer.cli import main
from discdimer.model import save


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def gr37_file(tmp_path):
    path = tmp_path / "gr37.json"
    save(fx.gr37(), path)
    return str(path)


def test_type(runner, gr37_file):
    result = runner.invoke(main, ["type", gr37_file])
    assert result.exit_code == 0
    assert result.output.strip() == "(3, 7)"


def test_type_json(runner, gr37_file):
    result = runner.invoke(main, ["type", gr37_file, "--format", "json"])
    doc = json.loads(result.output)
    assert doc["schema"] == 1
    assert (doc["k"], doc["n"]) == (3, 7)


def test_builtin_fixture_names(runner):
    result = runner.invoke(main, ["type", "uniform-2-5"])
    assert result.exit_code == 0
    assert result.output.strip() == "(2, 5)"


def test_unknown_model(runner):
    result = runner.invoke(main, ["type", "no-such-model"])
    assert result.exit_code != 0


def test_fixture_dir_env(runner, tmp_path, monkeypatch):
    result = runner.invoke(main, ["fixtures", str(tmp_path)])
    assert result.exit_code == 0
    names = sorted(os.listdir(tmp_path))
    assert names == sorted(f"{n}.json" for n in fx.FIXTURE_BUILDERS)
    monkeypatch.setenv("DIMER_FIXTURES", str(tmp_path))
    result = runner.invoke(main, ["type", "triangle"])
    assert result.exit_code == 0
    assert result.output.strip() == "(1, 3)"


def test_validate_exit_codes(runner, gr37_file):
    assert runner.invoke(main, ["validate", gr37_file]).exit_code == 0


def test_check_inconsistent_fails(runner, tmp_path):
    path = tmp_path / "bad.json"
    save(fx.inconsistent(), path)
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 1
    assert "consistent: False" in result.output


def test_matchings_boundary_filter(runner, gr37_file):
    result = runner.invoke(main, ["matchings", gr37_file,
                                  "--boundary", "1,3,5", "--format", "json"])
    doc = json.loads(result.output)
    assert doc["count"] == 3
    assert [1, 3, 9, 10, 15] in doc["matchings"]


def test_positroid_counts(runner, gr37_file):
    doc = json.loads(runner.invoke(
        main, ["positroid", gr37_file, "--format", "json"]).output)
    assert doc["count"] == 30


def test_extremes(runner, gr37_file):
    doc = json.loads(runner.invoke(
        main, ["extremes", gr37_file, "--boundary", "1,3,5",
               "--format", "json"]).output)
    assert doc["minimal"] != doc["maximal"]


def test_lattice_check(runner, gr37_file):
    result = runner.invoke(main, ["lattice", gr37_file, "--check-ensemble"])
    assert result.exit_code == 0
    assert "unimodular: True" in result.output


def test_kclass_bad_matching(runner, gr37_file):
    result = runner.invoke(main, ["kclass", gr37_file, "--matching", "1,2"])
    assert result.exit_code != 0


def test_ms_command(runner, tmp_path):
    std = tmp_path / "std.json"
    result = runner.invoke(main, ["standardise", "uniform-2-4", "-o", str(std)])
    assert result.exit_code == 0
    doc = json.loads(runner.invoke(
        main, ["ms", str(std), "--subset", "1,3", "--format", "json"]).output)
    assert len(doc["polynomial"]["terms"]) == 2


def test_twist_outside_positroid(runner, gr37_file):
    result = runner.invoke(main, ["twist-expr", gr37_file, "--subset", "2,3,4"])
    assert result.exit_code != 0


def test_measure_with_weight_file(runner, tmp_path):
    u24 = tmp_path / "u24.json"
    assert runner.invoke(main, ["build-uniform", "-k", "2", "-n", "4",
                                "-o", str(u24)]).exit_code == 0
    model = fx.build_uniform(2, 4)
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps({str(a.id): "1/2" for a in model.arrows}))
    result = runner.invoke(main, ["measure", str(u24), "--weights", str(wfile),
                                  "--check-plucker", "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["plucker"]["passed"]


def test_resolution_and_rotate(runner, gr37_file):
    result = runner.invoke(main, ["resolution", gr37_file,
                                  "--matching", "1,3,9,10,15"])
    assert result.exit_code == 0
    assert "exact: True" in result.output
    result = runner.invoke(main, ["rotate", gr37_file,
                                  "--matching", "1,3,9,10,15",
                                  "--vertex", "0", "--degree", "1",
                                  "--format", "json"])
    assert result.exit_code == 0


def test_verify_triangle_passes(runner):
    result = runner.invoke(main, ["verify", "triangle", "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["passed"]
    assert [c["name"] for c in doc["checks"]][:2] == ["validate", "check_postnikov"]


def test_verify_inconsistent_fails_as_specified(runner):
    result = runner.invoke(main, ["verify", "inconsistent", "--format", "json"])
    assert result.exit_code == 1
    doc = json.loads(result.output)
    status = {c["name"]: c["passed"] for c in doc["checks"]}
    assert status["validate"]
    assert not status["check_postnikov"]
    assert not status["eta_unimodular"]
    assert not doc["passed"]


def test_verify_structural_error_gives_json(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    result = runner.invoke(main, ["verify", str(path)])
    assert result.exit_code == 2
    assert "error" in json.loads(result.output)
