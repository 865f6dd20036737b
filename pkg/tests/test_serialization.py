"""
Tests for JSON exports and scenario files
"""

import json

import pytest
from pydantic import ValidationError

from app.cli.gallery import gallery_scenario
from app.core.exceptions import ScenarioError
from app.models.export import MatrixExport
from app.models.scenario import FieldSpec
from app.services.exactla import Field, Matrix
from app.services.hopfcore import FiniteHopf
from app.services.serialization import (
    bialgebra_from_export,
    bialgebra_to_export,
    dump_scenario,
    dumps_model,
    field_from_spec,
    field_spec,
    from_export,
    load_export,
    load_scenario,
    matrix_from_export,
    matrix_to_export,
    read_export,
    write_json,
    write_model,
    yd_bialgebra_to_export,
)
from app.services.ydcat import same_yd_structure


def test_field_specs():
    assert field_spec(Field.prime(7)) == FieldSpec(kind="prime", p=7)
    assert field_from_spec(FieldSpec(kind="rationals")) == Field.rationals()
    with pytest.raises(ScenarioError):
        FieldSpec(kind="prime", p=6)


def test_scalar_formats(Q, F7):
    assert matrix_to_export(Matrix(F7, [[-1, 8]])).entries == [["6", "1"]]
    assert matrix_to_export(Matrix(Q, [[1, -1]])).entries == [["1/1", "-1/1"]]


def test_matrix_import(Q):
    m = Matrix(Q, [[1, 2], [3, 4]])
    assert matrix_from_export(matrix_to_export(m)) == m
    bad = MatrixExport(field=FieldSpec(kind="rationals"), rows=2, cols=2, entries=[["1/1"]])
    with pytest.raises(ScenarioError):
        matrix_from_export(bad)


def test_hopf_algebra_import(sweedler):
    model = bialgebra_to_export(sweedler.A, "A")
    rebuilt = bialgebra_from_export(model)
    assert isinstance(rebuilt, FiniteHopf)
    assert rebuilt.same_structure(sweedler.A)
    assert rebuilt.antipode == sweedler.A.antipode
    assert rebuilt.labels == sweedler.A.labels


def test_multiplication_is_exported_densely(sweedler):
    model = bialgebra_to_export(sweedler.A, "A")
    assert len(model.mult) == 4
    assert all(len(plane) == 4 and all(len(row) == 4 for row in plane) for plane in model.mult)
    # g = 1#g, x = x#1
    assert model.mult[1][2] == ["0/1", "0/1", "0/1", "-1/1"]
    assert model.mult[2][1] == ["0/1", "0/1", "0/1", "1/1"]
    assert model.mult[2][2] == ["0/1"] * 4
    assert sorted(model.comult[2]) == [(1, 2, "1/1"), (2, 0, "1/1")]


def test_misshapen_multiplication_is_rejected(sweedler):
    model = bialgebra_to_export(sweedler.A, "A")
    broken = model.model_copy(update={"mult": model.mult[:3]})
    with pytest.raises(ScenarioError):
        bialgebra_from_export(broken)


def test_bialgebra_without_antipode_stays_plain(sweedler):
    model = bialgebra_to_export(sweedler.A.bialgebra, "A")
    assert model.antipode is None
    assert not isinstance(bialgebra_from_export(model), FiniteHopf)


def test_yd_bialgebra_import(taft_nichols):
    R = taft_nichols.algebra
    rebuilt = from_export(yd_bialgebra_to_export(R, "V_nichols"))
    assert same_yd_structure(rebuilt, R)
    assert rebuilt.degrees == R.degrees


def test_dumps_are_deterministic(sweedler):
    first = dumps_model(bialgebra_to_export(sweedler.A, "A"))
    second = dumps_model(bialgebra_to_export(sweedler.A, "A"))
    assert first == second
    assert first.endswith("\n")


def test_written_export_reloads(tmp_path, sweedler):
    path = write_model(bialgebra_to_export(sweedler.A, "A"), tmp_path / "nested" / "A.json")
    assert read_export(path).kind == "bialgebra"
    assert load_export(path).same_structure(sweedler.A)


def test_unknown_export_kind_is_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"format_version": 1, "kind": "coalgebra"}), encoding="utf-8")
    with pytest.raises(ValidationError):
        read_export(path)


def test_write_json_sorts_keys(tmp_path):
    path = write_json({"b": 1, "a": [1, 2]}, tmp_path / "out.json")
    text = path.read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"b"')


def test_scenario_file_round_trip(tmp_path):
    scenario = gallery_scenario("sweedler")
    path = tmp_path / "sweedler.json"
    text = dump_scenario(scenario, path)
    assert '"lambda"' in text
    assert load_scenario(path) == scenario
