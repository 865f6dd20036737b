"""
Data models for scenario files
"""

from enum import Enum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils.validators import ScenarioValidator


class Pipeline(str, Enum):
    """Construction and verification pipelines a scenario can request"""
    NICHOLS = "nichols"
    BIPRODUCT = "biproduct"
    OP_ISO = "op_iso"
    DUAL_ISO = "dual_iso"
    DATUM = "datum"
    TWIST = "twist"
    REDUCE = "reduce"


class FieldSpec(BaseModel):
    """Coefficient field: the rationals or F_p"""
    kind: Literal["rationals", "prime"]
    p: Optional[int] = None

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_characteristic(self) -> "FieldSpec":
        ScenarioValidator.validate_field(self.kind, self.p)
        return self


class GeneratorSpec(BaseModel):
    """One basis vector of a diagonal Yetter-Drinfel'd module"""
    grade: List[int]
    character: List[str]
    label: Optional[str] = None

    model_config = ConfigDict(extra="forbid")


class Scenario(BaseModel):
    """A group twist datum together with the pipelines to run on it

    Scalars are strings: "a/b" over the rationals, residues over F_p.
    Indices in ``s`` and in grades are 0-based.
    """
    version: Literal[1] = 1
    name: str = Field(..., min_length=1)
    field: FieldSpec
    lambda_group: List[int] = Field(..., min_length=1)
    gamma_group: List[int] = Field(..., min_length=1)
    w_generators: List[GeneratorSpec] = Field(default_factory=list)
    v_generators: List[GeneratorSpec] = Field(default_factory=list)
    phi: List[List[str]]
    s: List[int] = Field(default_factory=list)
    lambda_: List[str] = Field(default_factory=list, alias="lambda")
    cap: Optional[int] = None
    pipelines: List[Pipeline] = Field(default_factory=lambda: [Pipeline.NICHOLS])

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    @model_validator(mode="after")
    def _check_shape(self) -> "Scenario":
        ScenarioValidator.validate_group_orders(self.lambda_group, "Lambda")
        ScenarioValidator.validate_group_orders(self.gamma_group, "Gamma")
        for i, generator in enumerate(self.w_generators):
            ScenarioValidator.validate_grade(generator.grade, self.lambda_group, f"w_generators[{i}]")
        for j, generator in enumerate(self.v_generators):
            ScenarioValidator.validate_grade(generator.grade, self.gamma_group, f"v_generators[{j}]")
        ScenarioValidator.validate_s(self.s, len(self.w_generators), len(self.v_generators))
        ScenarioValidator.validate_lambda(self.lambda_, len(self.w_generators))
        ScenarioValidator.validate_cap(self.cap)
        return self
