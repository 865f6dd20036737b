"""
Tests for scenario validation
"""

import pytest
from pydantic import ValidationError

from app.cli.gallery import GALLERY, gallery_scenario
from app.core.exceptions import ScenarioError, UnknownObjectError
from app.models.scenario import Pipeline, Scenario
from app.utils.validators import ScenarioValidator


def _sweedler_payload(**overrides):
    payload = {
        "name": "sweedler",
        "field": {"kind": "rationals"},
        "lambda_group": [2],
        "gamma_group": [2],
        "w_generators": [{"grade": [1], "character": ["-1/1"]}],
        "v_generators": [{"grade": [1], "character": ["-1/1"]}],
        "phi": [["-1/1"]],
        "s": [0],
        "lambda": ["1/1"],
    }
    payload.update(overrides)
    return payload


def test_valid_scenario_uses_lambda_alias():
    scenario = Scenario.model_validate(_sweedler_payload())
    assert scenario.lambda_ == ["1/1"]
    assert scenario.pipelines == [Pipeline.NICHOLS]


def test_field_validation(F7):
    ScenarioValidator.validate_field("rationals", None)
    ScenarioValidator.validate_field("prime", 7)
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_field("prime", 9)
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_field("rationals", 5)
    with pytest.raises(ScenarioError):
        Scenario.model_validate(_sweedler_payload(field={"kind": "prime", "p": 1}))


@pytest.mark.parametrize("overrides", [
    {"s": [1]},
    {"s": []},
    {"lambda": []},
    {"cap": 0},
    {"lambda_group": [0]},
    {"w_generators": [{"grade": [2], "character": ["-1/1"]}]},
    {"v_generators": [{"grade": [1, 0], "character": ["-1/1"]}]},
])
def test_malformed_scenarios_raise_scenario_error(overrides):
    with pytest.raises(ScenarioError) as excinfo:
        Scenario.model_validate(_sweedler_payload(**overrides))
    assert excinfo.value.exit_code == 2


def test_unknown_keys_are_schema_errors():
    with pytest.raises(ValidationError):
        Scenario.model_validate(_sweedler_payload(colour="blue"))
    with pytest.raises(ValidationError):
        Scenario.model_validate(_sweedler_payload(pipelines=["mystery"]))


def test_characters_must_be_roots_of_unity(Q, F7):
    ScenarioValidator.validate_character([F7(2)], [3], F7, "chi")
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_character([F7(3)], [3], F7, "chi")
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_character([Q.one], [2], Q, "chi")
    ScenarioValidator.validate_character([Q.one], [2], Q, "chi", nontrivial=False)


def test_phi_must_be_a_homomorphism(Q):
    ScenarioValidator.validate_phi([[Q(-1)]], [2], [2], Q)
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_phi([[Q(-1)]], [2], [3], Q)
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_phi([[Q(-1), Q(1)]], [2], [2], Q)


def test_pipeline_names():
    known = [p.value for p in Pipeline]
    assert ScenarioValidator.validate_pipelines(["twist", "nichols", "twist"], known) == ["twist", "nichols"]
    with pytest.raises(ScenarioError):
        ScenarioValidator.validate_pipelines(["fourier"], known)


def test_gallery_scenarios_validate():
    for name in GALLERY:
        scenario = gallery_scenario(name)
        assert Scenario.model_validate(scenario.model_dump(by_alias=True)) == scenario
    with pytest.raises(UnknownObjectError):
        gallery_scenario("nonexistent")
