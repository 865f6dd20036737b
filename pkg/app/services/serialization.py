"""
JSON export and import of structure constants, matrices and scenarios
"""

import json
from pathlib import Path
from typing import Annotated, List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field as PydanticField, TypeAdapter

from app.core.config import settings
from app.core.exceptions import ScenarioError
from app.core.logging import get_logger
from app.models.export import BialgebraExport, DenseCube, MatrixExport, SparsePair, SparseTriple, YDBialgebraExport
from app.models.scenario import FieldSpec, Scenario
from app.services.exactla import Field, FieldKind, Matrix
from app.services.hopfcore import FiniteBialgebra, FiniteHopf
from app.services.ydcat import YDBialgebra, YDModule

logger = get_logger(__name__)

Export = Annotated[Union[BialgebraExport, YDBialgebraExport, MatrixExport], PydanticField(discriminator="kind")]
_export_adapter = TypeAdapter(Export)


def field_spec(field: Field) -> FieldSpec:
    if field.is_prime_field:
        return FieldSpec(kind="prime", p=field.p)
    return FieldSpec(kind="rationals")


def field_from_spec(spec: FieldSpec) -> Field:
    if spec.kind == "prime":
        return Field.prime(spec.p)
    return Field(FieldKind.RATIONALS)


def _grid(field: Field, array: np.ndarray) -> List[List[str]]:
    return [[field.format(v) for v in row] for row in array]


def _scalars(field: Field, array: np.ndarray) -> List[str]:
    return [field.format(v) for v in array]


def _sparse_triples(field: Field, tensor: np.ndarray) -> List[SparseTriple]:
    reduced = field.reduce_array(tensor)
    return [(int(i), int(j), int(k), field.format(reduced[i, j, k])) for i, j, k in np.argwhere(reduced != 0)]


def _cube(field: Field, tensor: np.ndarray) -> DenseCube:
    return [_grid(field, plane) for plane in field.reduce_array(tensor)]


def _sparse_pairs(field: Field, terms) -> List[List[SparsePair]]:
    return [[(int(j), int(k), field.format(c)) for j, k, c in entry] for entry in terms]


def _tensor_from(field: Field, shape, triples: List[SparseTriple]) -> np.ndarray:
    tensor = field.zeros(shape)
    for i, j, k, c in triples:
        tensor[i, j, k] = field.parse(c)
    return tensor


def _cube_from(field: Field, n: int, cube: DenseCube) -> np.ndarray:
    if len(cube) != n or any(len(plane) != n or any(len(row) != n for row in plane) for plane in cube):
        raise ScenarioError(f"mult is not a {n}x{n}x{n} array")
    tensor = field.zeros((n, n, n))
    for i, plane in enumerate(cube):
        for j, row in enumerate(plane):
            for k, value in enumerate(row):
                tensor[i, j, k] = field.parse(value)
    return tensor


def _terms_from(field: Field, entries: List[List[SparsePair]]):
    return tuple(tuple((j, k, field.parse(c)) for j, k, c in entry) for entry in entries)


def _grid_from(field: Field, rows: List[List[str]]) -> Matrix:
    array = field.zeros((len(rows), len(rows[0]) if rows else 0))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            array[i, j] = field.parse(value)
    return Matrix._wrap(field, array)


def matrix_to_export(matrix: Matrix) -> MatrixExport:
    return MatrixExport(field=field_spec(matrix.field), rows=matrix.rows, cols=matrix.cols,
                        entries=_grid(matrix.field, matrix.entries))


def matrix_from_export(model: MatrixExport) -> Matrix:
    field = field_from_spec(model.field)
    if len(model.entries) != model.rows or any(len(row) != model.cols for row in model.entries):
        raise ScenarioError(f"matrix entries do not match the declared shape {model.rows}x{model.cols}")
    if model.cols == 0:
        return Matrix.zeros(field, model.rows, 0)
    return _grid_from(field, model.entries)


def bialgebra_to_export(B: FiniteBialgebra, name: str) -> BialgebraExport:
    f = B.field
    antipode = inverse = None
    if isinstance(B, FiniteHopf):
        antipode = _grid(f, B.antipode.entries)
        if B.antipode_inverse is not None:
            inverse = _grid(f, B.antipode_inverse.entries)
    return BialgebraExport(
        name=name,
        field=field_spec(f),
        labels=list(B.labels),
        mult=_cube(f, B.mult),
        unit=_scalars(f, B.unit),
        comult=_sparse_pairs(f, B.comult),
        counit=_scalars(f, B.counit),
        antipode=antipode,
        antipode_inverse=inverse,
    )


def bialgebra_from_export(model: BialgebraExport) -> FiniteBialgebra:
    """Rebuild the bialgebra, a FiniteHopf when the export carries an antipode."""
    f = field_from_spec(model.field)
    d = len(model.labels)
    B = FiniteBialgebra(
        f, tuple(model.labels),
        _cube_from(f, d, model.mult),
        f.vector(model.unit),
        _terms_from(f, model.comult),
        f.vector(model.counit),
    )
    if model.antipode is None:
        return B
    inverse = _grid_from(f, model.antipode_inverse) if model.antipode_inverse is not None else None
    return FiniteHopf(f, B.labels, B.mult, B.unit, B.comult, B.counit,
                      antipode=_grid_from(f, model.antipode), antipode_inverse=inverse)


def yd_bialgebra_to_export(R: YDBialgebra, name: str) -> YDBialgebraExport:
    f, M = R.field, R.module
    return YDBialgebraExport(
        name=name,
        field=field_spec(f),
        base=bialgebra_to_export(M.H, f"{name}.base"),
        labels=list(M.labels),
        action=_sparse_triples(f, M.action),
        coaction=_sparse_pairs(f, M.coaction),
        mult=_cube(f, R.mult) if R.mult is not None else None,
        unit=_scalars(f, R.unit) if R.unit is not None else None,
        comult=_sparse_pairs(f, R.comult) if R.comult is not None else None,
        counit=_scalars(f, R.counit) if R.counit is not None else None,
        degrees=list(R.degrees) if R.degrees is not None else None,
        truncated_at=R.truncated_at,
    )


def yd_bialgebra_from_export(model: YDBialgebraExport) -> YDBialgebra:
    f = field_from_spec(model.field)
    H = bialgebra_from_export(model.base)
    if not isinstance(H, FiniteHopf):
        raise ScenarioError(f"the base of {model.name} carries no antipode")
    n = len(model.labels)
    module = YDModule(H, tuple(model.labels), _tensor_from(f, (H.dim, n, n), model.action),
                      _terms_from(f, model.coaction))
    return YDBialgebra(
        module,
        _cube_from(f, n, model.mult) if model.mult is not None else None,
        f.vector(model.unit) if model.unit is not None else None,
        _terms_from(f, model.comult) if model.comult is not None else None,
        f.vector(model.counit) if model.counit is not None else None,
        tuple(model.degrees) if model.degrees is not None else None,
        model.truncated_at,
    )


def from_export(model: BaseModel):
    """The algebraic object an export model describes."""
    if isinstance(model, BialgebraExport):
        return bialgebra_from_export(model)
    if isinstance(model, YDBialgebraExport):
        return yd_bialgebra_from_export(model)
    return matrix_from_export(model)


def dumps_model(model: BaseModel) -> str:
    """Deterministic JSON text with a trailing newline."""
    return model.model_dump_json(indent=settings.EXPORT_INDENT, by_alias=True) + "\n"


def write_model(model: BaseModel, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_model(model), encoding="utf-8")
    logger.debug("model_written", path=str(path), kind=type(model).__name__)
    return path


def write_json(data, path: Path) -> Path:
    """Plain JSON written with sorted keys, for files without a model."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=settings.EXPORT_INDENT, sort_keys=True, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    return path


def read_export(path: Path):
    """Validate an export file and return its model."""
    text = Path(path).read_text(encoding="utf-8")
    return _export_adapter.validate_json(text)


def load_export(path: Path):
    return from_export(read_export(path))


def load_scenario(path: Path) -> Scenario:
    text = Path(path).read_text(encoding="utf-8")
    scenario = Scenario.model_validate_json(text)
    logger.debug("scenario_loaded", path=str(path), name=scenario.name)
    return scenario


def dump_scenario(scenario: Scenario, path: Optional[Path] = None) -> str:
    text = scenario.model_dump_json(indent=settings.EXPORT_INDENT, by_alias=True, exclude_none=True) + "\n"
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text
