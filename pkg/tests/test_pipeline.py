"""
Tests for the scenario runner and its reports
"""

import pytest

from app.cli.gallery import gallery_scenario
from app.core.exceptions import DimensionBlowupError, UnknownObjectError
from app.models.report import SuiteStatus
from app.models.scenario import GeneratorSpec, Pipeline, Scenario
from app.services.pipeline import PipelineRunner, datum_from_scenario, expand_pipelines, render_text_report


@pytest.fixture(scope="module")
def sweedler_run():
    runner = PipelineRunner(gallery_scenario("sweedler"))
    return runner, runner.run()


def _suite(report, name):
    return next(suite for suite in report.suites if suite.name == name)


def test_prerequisites_are_added_in_order():
    assert expand_pipelines([Pipeline.TWIST]) == [Pipeline.NICHOLS, Pipeline.BIPRODUCT, Pipeline.DATUM,
                                                  Pipeline.TWIST]
    assert expand_pipelines([Pipeline.DUAL_ISO, Pipeline.NICHOLS]) == [Pipeline.NICHOLS, Pipeline.BIPRODUCT,
                                                                       Pipeline.DUAL_ISO]


def test_datum_from_scenario(Q):
    datum = datum_from_scenario(gallery_scenario("sweedler"))
    assert datum.field == Q
    assert datum.u_labels == ("u",)
    assert datum.a_labels == ("x",)
    assert datum.lambdas == (1,)


def test_sweedler_run_passes(sweedler_run):
    _, report = sweedler_run
    assert report.exit_code == 0
    assert report.status is SuiteStatus.PASSED
    assert report.hilbert["V"] == [1, 1, 0, 0, 0, 0, 0]
    assert report.dimensions["U"] == 4
    assert report.dimensions["A"] == 4
    assert report.dimensions["twist"] == 16
    names = [suite.name for suite in report.suites]
    for expected in ("W_nichols", "V_nichols", "biproduct_U", "biproduct_A", "op_iso_U", "dual_iso_A",
                     "datum", "beta_smash_tau", "cocycle", "twisted_bialgebra", "phi_generators"):
        assert expected in names


def test_sweedler_relations(sweedler_run):
    _, report = sweedler_run
    relations = report.relations["A"]
    assert "x·x = 0" in relations
    assert "g·x = -x#g" in relations
    assert "x·g = x#g" in relations


def test_sweedler_objects_export(sweedler_run):
    runner, report = sweedler_run
    assert report.objects == runner.objects
    for object_id in ("A", "U", "tau", "lifted_beta", "smash_form", "sigma", "twist"):
        assert object_id in runner.objects
    assert runner.export("A").kind == "bialgebra"
    assert runner.export("V_nichols").kind == "yd_bialgebra"
    assert runner.export("tau").entries == [["1/1", "1/1"], ["1/1", "-1/1"]]
    with pytest.raises(UnknownObjectError):
        runner.export("reduced_twist")


def test_incompatible_phi_exits_one():
    report = PipelineRunner(gallery_scenario("incompatible_phi")).run()
    assert report.exit_code == 1
    datum = _suite(report, "datum")
    assert datum.status is SuiteStatus.FAILED
    assert "IncompatibleDatumError" in datum.message
    assert datum.details == {"index": 0}
    assert _suite(report, "biproduct_A").status is SuiteStatus.PASSED


def test_incomplete_truncation_fails_the_nichols_suite():
    generator = GeneratorSpec(grade=[1, 0], character=["1/1", "-1/1"])
    scenario = Scenario(
        name="infinite",
        field={"kind": "rationals"},
        lambda_group=[2, 2],
        gamma_group=[2, 2],
        w_generators=[generator],
        v_generators=[generator],
        phi=[["1/1", "1/1"], ["1/1", "1/1"]],
        s=[0],
        lambda_=["0/1"],
        pipelines=[Pipeline.BIPRODUCT],
    )
    report = PipelineRunner(scenario, cap=3).run()
    assert report.exit_code == 1
    suite = _suite(report, "W_nichols")
    assert suite.status is SuiteStatus.FAILED
    assert suite.report.failed_axioms() == ["complete"]
    assert report.hilbert["W"] == [1, 1, 1, 1]
    assert _suite(report, "biproduct").status is SuiteStatus.SKIPPED


def test_qplane_nichols_and_biproducts():
    report = PipelineRunner(gallery_scenario("qplane"), cap=4).run()
    assert report.exit_code == 0
    assert report.hilbert["W"] == [1, 2, 1, 0, 0]
    assert report.dimensions["U"] == 16
    assert _suite(report, "dual_iso_U").status is SuiteStatus.PASSED


def test_taft_run_twists_to_dimension_81():
    report = PipelineRunner(gallery_scenario("taft3_f7")).run()
    assert report.exit_code == 0
    assert report.hilbert["V"][:4] == [1, 1, 1, 0]
    assert report.dimensions["twist"] == 81
    assert _suite(report, "beta_smash_tau").status is SuiteStatus.PASSED


def test_dimension_bound_aborts_the_run():
    runner = PipelineRunner(gallery_scenario("qplane"), cap=4, dim_bound=4)
    with pytest.raises(DimensionBlowupError):
        runner.run()


def test_text_report_limits_failures():
    report = PipelineRunner(gallery_scenario("incompatible_phi")).run()
    text = render_text_report(report, max_failures=1)
    assert text.startswith("scenario: incompatible_phi\n")
    assert "[FAILED] datum/datum" in text
    assert "status: failed (exit 1)" in text
