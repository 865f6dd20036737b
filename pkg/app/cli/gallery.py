"""
Canonical scenarios for the worked examples
"""

from typing import Callable, Dict, List

from app.core.exceptions import UnknownObjectError
from app.models.scenario import FieldSpec, GeneratorSpec, Pipeline, Scenario

RATIONALS = FieldSpec(kind="rationals")
F7 = FieldSpec(kind="prime", p=7)

ALL_BUT_REDUCE = [Pipeline.NICHOLS, Pipeline.BIPRODUCT, Pipeline.OP_ISO, Pipeline.DUAL_ISO,
                  Pipeline.DATUM, Pipeline.TWIST]


def _trivial() -> Scenario:
    """k⊗k: every object is one-dimensional."""
    return Scenario(name="trivial", field=RATIONALS, lambda_group=[1], gamma_group=[1],
                    phi=[["1/1"]], pipelines=ALL_BUT_REDUCE)


def _sweedler(name: str, pipelines: List[Pipeline]) -> Scenario:
    return Scenario(
        name=name,
        field=RATIONALS,
        lambda_group=[2],
        gamma_group=[2],
        w_generators=[GeneratorSpec(grade=[1], character=["-1/1"], label="u")],
        v_generators=[GeneratorSpec(grade=[1], character=["-1/1"], label="x")],
        phi=[["-1/1"]],
        s=[0],
        lambda_=["1/1"],
        pipelines=pipelines,
    )


def _taft3_f7() -> Scenario:
    """Taft algebras of dimension 9 over F_7 with q = 2 and τ(z, g) = q⁻¹ = 4."""
    return Scenario(
        name="taft3_f7",
        field=F7,
        lambda_group=[3],
        gamma_group=[3],
        w_generators=[GeneratorSpec(grade=[1], character=["4"], label="u")],
        v_generators=[GeneratorSpec(grade=[1], character=["2"], label="x")],
        phi=[["4"]],
        s=[0],
        lambda_=["1"],
        pipelines=[Pipeline.NICHOLS, Pipeline.BIPRODUCT, Pipeline.OP_ISO, Pipeline.DUAL_ISO, Pipeline.DATUM,
                   Pipeline.TWIST],
    )


def _qplane() -> Scenario:
    """Exterior algebra on two generators over k[Z/2 × Z/2]; the datum itself is not requested."""
    generators = [
        GeneratorSpec(grade=[1, 0], character=["-1/1", "1/1"], label="x1"),
        GeneratorSpec(grade=[0, 1], character=["1/1", "-1/1"], label="x2"),
    ]
    return Scenario(
        name="qplane",
        field=RATIONALS,
        lambda_group=[2, 2],
        gamma_group=[2, 2],
        w_generators=generators,
        v_generators=generators,
        phi=[["1/1", "1/1"], ["1/1", "1/1"]],
        s=[0, 1],
        lambda_=["0/1", "0/1"],
        pipelines=[Pipeline.NICHOLS, Pipeline.BIPRODUCT, Pipeline.OP_ISO, Pipeline.DUAL_ISO],
    )


def _reduced_rank() -> Scenario:
    """Two W generators, one V generator and λ = (1, 0): V^⊥ is spanned by u2."""
    return Scenario(
        name="reduced_rank",
        field=RATIONALS,
        lambda_group=[2],
        gamma_group=[2],
        w_generators=[
            GeneratorSpec(grade=[1], character=["-1/1"], label="u1"),
            GeneratorSpec(grade=[1], character=["-1/1"], label="u2"),
        ],
        v_generators=[GeneratorSpec(grade=[1], character=["-1/1"], label="x")],
        phi=[["-1/1"]],
        s=[0, 0],
        lambda_=["1/1", "0/1"],
        pipelines=[Pipeline.REDUCE],
    )


def _incompatible_phi() -> Scenario:
    """The Sweedler datum with φ trivial; fails (C.1) and (C.2) and exits 1."""
    scenario = _sweedler("incompatible_phi", [Pipeline.DATUM])
    return scenario.model_copy(update={"phi": [["1/1"]]})


GALLERY: Dict[str, Callable[[], Scenario]] = {
    "trivial": _trivial,
    "sweedler": lambda: _sweedler("sweedler", ALL_BUT_REDUCE),
    "double_sweedler": lambda: _sweedler("double_sweedler", [Pipeline.TWIST, Pipeline.REDUCE]),
    "taft3_f7": _taft3_f7,
    "qplane": _qplane,
    "reduced_rank": _reduced_rank,
    "incompatible_phi": _incompatible_phi,
}

# fixtures whose run is expected to exit 1
FAILING_FIXTURES = frozenset({"incompatible_phi"})


def gallery_scenario(name: str) -> Scenario:
    if name not in GALLERY:
        raise UnknownObjectError(f"unknown gallery entry {name!r}; expected one of {', '.join(sorted(GALLERY))}")
    return GALLERY[name]()
