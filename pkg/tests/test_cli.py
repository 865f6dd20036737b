"""
Tests for the command-line interface
"""

import json

import pytest

from app.cli.gallery import gallery_scenario
from app.models.scenario import Pipeline
from app.services.hopfcore import FiniteHopf
from app.services.serialization import dump_scenario, load_export, load_scenario
from main import main


@pytest.fixture
def biproduct_scenario(tmp_path):
    scenario = gallery_scenario("sweedler").model_copy(update={"pipelines": [Pipeline.BIPRODUCT]})
    path = tmp_path / "sweedler.json"
    dump_scenario(scenario, path)
    return path


def test_gallery_to_file(tmp_path):
    path = tmp_path / "taft.json"
    assert main(["gallery", "taft3_f7", "--out", str(path)]) == 0
    assert load_scenario(path).name == "taft3_f7"


def test_gallery_to_stdout(capsys):
    assert main(["gallery", "sweedler"]) == 0
    assert json.loads(capsys.readouterr().out)["name"] == "sweedler"


def test_unknown_gallery_entry_is_an_argument_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["gallery", "nonexistent"])
    assert excinfo.value.code == 2


def test_run_writes_reports(tmp_path, biproduct_scenario):
    out = tmp_path / "out"
    assert main(["run", str(biproduct_scenario), "--out", str(out), "--cap", "3"]) == 0
    for name in ("report.json", "report.txt", "hilbert.json", "relations.txt"):
        assert (out / name).exists()
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert report["exit_code"] == 0
    assert json.loads((out / "hilbert.json").read_text(encoding="utf-8"))["V"] == [1, 1, 0, 0]
    assert "# A" in (out / "relations.txt").read_text(encoding="utf-8")


def test_run_report_is_deterministic(tmp_path, biproduct_scenario):
    first, second = tmp_path / "first", tmp_path / "second"
    main(["run", str(biproduct_scenario), "--out", str(first)])
    main(["run", str(biproduct_scenario), "--out", str(second)])
    assert (first / "report.json").read_bytes() == (second / "report.json").read_bytes()


def test_failing_fixture_exits_one(tmp_path):
    scenario = tmp_path / "incompatible.json"
    assert main(["gallery", "incompatible_phi", "--out", str(scenario)]) == 0
    assert main(["run", str(scenario), "--out", str(tmp_path / "out")]) == 1
    assert "[FAILED]" in (tmp_path / "out" / "report.txt").read_text(encoding="utf-8")


def test_bad_input_exits_two(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json", encoding="utf-8")
    assert main(["run", str(broken), "--out", str(tmp_path)]) == 2
    assert main(["run", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 2
    bad_s = tmp_path / "bad_s.json"
    payload = json.loads(dump_scenario(gallery_scenario("sweedler")))
    payload["s"] = [5]
    bad_s.write_text(json.dumps(payload), encoding="utf-8")
    assert main(["run", str(bad_s), "--out", str(tmp_path)]) == 2


def test_export_reloads(tmp_path, biproduct_scenario):
    out = tmp_path / "A.json"
    assert main(["export", str(biproduct_scenario), "A", str(out)]) == 0
    A = load_export(out)
    assert isinstance(A, FiniteHopf)
    assert A.dim == 4


def test_export_needs_a_destination(biproduct_scenario):
    with pytest.raises(SystemExit) as excinfo:
        main(["export", str(biproduct_scenario), "A"])
    assert excinfo.value.code == 2


def test_export_of_unknown_object_exits_two(tmp_path, biproduct_scenario):
    assert main(["export", str(biproduct_scenario), "twist", str(tmp_path / "t.json")]) == 2


def test_list_objects(capsys, biproduct_scenario):
    assert main(["list-objects", str(biproduct_scenario)]) == 0
    assert capsys.readouterr().out.split() == ["A", "U", "V_nichols", "W_nichols"]


def test_version():
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
