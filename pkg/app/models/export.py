"""
Data models for structure-constant exports
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from app.models.scenario import FieldSpec

FORMAT_VERSION = 1

# (i, j, k, c): e_i e_j has coefficient c at e_k, or e_i has c at e_j ⊗ e_k
SparseTriple = Tuple[int, int, int, str]
# (j, k, c) within one basis element's coproduct or coaction
SparsePair = Tuple[int, int, str]
# cube[i][j][k]: coefficient of e_k in e_i e_j
DenseCube = List[List[List[str]]]


class MatrixExport(BaseModel):
    """A matrix over the field, rows indexed by the target basis"""
    format_version: Literal[1] = FORMAT_VERSION
    kind: Literal["matrix"] = "matrix"
    field: FieldSpec
    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    entries: List[List[str]]

    model_config = ConfigDict(extra="forbid")


class BialgebraExport(BaseModel):
    """Structure constants of a finite-dimensional bialgebra or Hopf algebra"""
    format_version: Literal[1] = FORMAT_VERSION
    kind: Literal["bialgebra"] = "bialgebra"
    name: str
    field: FieldSpec
    labels: List[str]
    mult: DenseCube
    unit: List[str]
    comult: List[List[SparsePair]]
    counit: List[str]
    antipode: Optional[List[List[str]]] = None
    antipode_inverse: Optional[List[List[str]]] = None

    model_config = ConfigDict(extra="forbid")


class YDBialgebraExport(BaseModel):
    """A bialgebra in the Yetter-Drinfel'd category of ``base`` with degree tags"""
    format_version: Literal[1] = FORMAT_VERSION
    kind: Literal["yd_bialgebra"] = "yd_bialgebra"
    name: str
    field: FieldSpec
    base: BialgebraExport
    labels: List[str]
    action: List[SparseTriple]
    coaction: List[List[SparsePair]]
    mult: Optional[DenseCube] = None
    unit: Optional[List[str]] = None
    comult: Optional[List[List[SparsePair]]] = None
    counit: Optional[List[str]] = None
    degrees: Optional[List[int]] = None
    truncated_at: Optional[int] = None

    model_config = ConfigDict(extra="forbid")
