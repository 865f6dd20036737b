"""
Scenario runner: pipelines in dependency order, one suite result per verification
"""

import time
from typing import Callable, Dict, List, Optional, Sequence

from app.core.config import settings
from app.core.exceptions import EXIT_VERIFICATION, UnknownObjectError, YDTwistError
from app.core.logging import get_logger
from app.models.report import AxiomFailure, AxiomReport, RunReport, SuiteResult, SuiteStatus
from app.models.scenario import Pipeline, Scenario
from app.services.biproduct import Biproduct, antipode_square_report, build_biproduct, dual_biproduct, op_biproduct
from app.services.biproduct import recover_R
from app.services.exactla import Field
from app.services.hopfcore import GroupAlgebra, group_algebra, relations_report
from app.services.nichols import (
    NicholsTruncation,
    brute_force_symmetrizer,
    check_poincare_symmetry,
    check_primitives,
    diagonal_yd,
    hilbert_series,
    nichols_truncate,
)
from app.services.serialization import bialgebra_to_export, field_from_spec, matrix_to_export, yd_bialgebra_to_export
from app.services.twist import (
    DatumTwist,
    GroupTwistDatum,
    TwistDatum,
    build_group_datum,
    phi_generators,
    reduce_datum,
    twist_datum,
)
from app.services.ydcat import same_yd_structure

logger = get_logger(__name__)

PREREQUISITES: Dict[Pipeline, Sequence[Pipeline]] = {
    Pipeline.NICHOLS: (),
    Pipeline.BIPRODUCT: (Pipeline.NICHOLS,),
    Pipeline.OP_ISO: (Pipeline.BIPRODUCT,),
    Pipeline.DUAL_ISO: (Pipeline.BIPRODUCT,),
    Pipeline.DATUM: (Pipeline.NICHOLS, Pipeline.BIPRODUCT),
    Pipeline.TWIST: (Pipeline.DATUM,),
    Pipeline.REDUCE: (Pipeline.TWIST,),
}

# symmetrizer oracle runs only while d! · dim V^{⊗d} stays small
ORACLE_MAX_DEGREE = 4
ORACLE_MAX_SIZE = 256


def expand_pipelines(requested: Sequence[Pipeline]) -> List[Pipeline]:
    """Requested pipelines plus their prerequisites, in dependency order."""
    needed = set()
    stack = list(requested)
    while stack:
        pipeline = Pipeline(stack.pop())
        if pipeline not in needed:
            needed.add(pipeline)
            stack.extend(PREREQUISITES[pipeline])
    return [pipeline for pipeline in Pipeline if pipeline in needed]


def datum_from_scenario(scenario: Scenario, field: Optional[Field] = None) -> GroupTwistDatum:
    field = field or field_from_spec(scenario.field)
    w_labels = [g.label for g in scenario.w_generators]
    v_labels = [g.label for g in scenario.v_generators]
    return GroupTwistDatum(
        field=field,
        lambda_orders=tuple(scenario.lambda_group),
        gamma_orders=tuple(scenario.gamma_group),
        w_grades=tuple(tuple(g.grade) for g in scenario.w_generators),
        w_characters=tuple(tuple(field.parse(v) for v in g.character) for g in scenario.w_generators),
        v_grades=tuple(tuple(g.grade) for g in scenario.v_generators),
        v_characters=tuple(tuple(field.parse(v) for v in g.character) for g in scenario.v_generators),
        phi=tuple(tuple(field.parse(v) for v in row) for row in scenario.phi),
        s=tuple(scenario.s),
        lambdas=tuple(field.parse(v) for v in scenario.lambda_),
        w_labels=tuple(w_labels) if all(w_labels) else None,
        v_labels=tuple(v_labels) if all(v_labels) else None,
    )


def _generator_names(prefix: str, count: int) -> List[str]:
    return [prefix] if count == 1 else [f"{prefix}{r + 1}" for r in range(count)]


class PipelineRunner:
    """Runs the pipelines a scenario requests and keeps every constructed object for export"""

    def __init__(self, scenario: Scenario, cap: Optional[int] = None, dim_bound: Optional[int] = None):
        self.scenario = scenario
        self.field = field_from_spec(scenario.field)
        self.cap = cap or scenario.cap or settings.NICHOLS_CAP
        self.dim_bound = dim_bound or settings.NICHOLS_DIM_BOUND
        self.pipelines = expand_pipelines(scenario.pipelines)
        self.datum = datum_from_scenario(scenario, self.field)
        self.suites: List[SuiteResult] = []
        self.hilbert: Dict[str, List[int]] = {}
        self.dimensions: Dict[str, int] = {}
        self.relations: Dict[str, List[str]] = {}
        self._exports: Dict[str, Callable] = {}
        self._failed: set = set()

        d = self.datum
        self.K: GroupAlgebra = group_algebra(d.lambda_orders, self.field, _generator_names("z", len(d.lambda_orders)))
        self.H: GroupAlgebra = group_algebra(d.gamma_orders, self.field, _generator_names("g", len(d.gamma_orders)))
        self.W = diagonal_yd(self.K, d.w_grades, d.w_characters, d.u_labels)
        self.V = diagonal_yd(self.H, d.v_grades, d.v_characters, d.a_labels)
        self.W_nichols: Optional[NicholsTruncation] = None
        self.V_nichols: Optional[NicholsTruncation] = None
        self.U: Optional[Biproduct] = None
        self.A: Optional[Biproduct] = None
        self.twist_datum: Optional[TwistDatum] = None
        self.twist: Optional[DatumTwist] = None

    @property
    def objects(self) -> List[str]:
        return sorted(self._exports)

    def export(self, object_id: str):
        """Export model of a constructed object."""
        if object_id not in self._exports:
            raise UnknownObjectError(f"unknown object {object_id!r}; available: {', '.join(self.objects) or 'none'}")
        return self._exports[object_id]()

    def _register(self, object_id: str, build: Callable) -> None:
        self._exports[object_id] = build

    def _suite(self, name: str, pipeline: Pipeline, report: Optional[AxiomReport] = None,
               message: str = "", **details) -> None:
        passed = report is None or report.passed
        self.suites.append(SuiteResult(
            name=name,
            pipeline=pipeline.value,
            status=SuiteStatus.PASSED if passed else SuiteStatus.FAILED,
            message=message,
            report=report,
            details=details,
        ))
        if not passed:
            self._failed.add(pipeline)

    def run(self) -> RunReport:
        stages = {
            Pipeline.NICHOLS: self._run_nichols,
            Pipeline.BIPRODUCT: self._run_biproduct,
            Pipeline.OP_ISO: self._run_op_iso,
            Pipeline.DUAL_ISO: self._run_dual_iso,
            Pipeline.DATUM: self._run_datum,
            Pipeline.TWIST: self._run_twist,
            Pipeline.REDUCE: self._run_reduce,
        }
        logger.info("run_started", scenario=self.scenario.name, pipelines=[p.value for p in self.pipelines],
                    cap=self.cap)
        for pipeline in self.pipelines:
            blocked = [p.value for p in PREREQUISITES[pipeline] if p in self._failed]
            if blocked:
                self.suites.append(SuiteResult(name=pipeline.value, pipeline=pipeline.value,
                                               status=SuiteStatus.SKIPPED,
                                               message=f"prerequisite failed: {', '.join(blocked)}"))
                self._failed.add(pipeline)
                continue
            start = time.perf_counter()
            try:
                stages[pipeline]()
            except YDTwistError as exc:
                if exc.exit_code != EXIT_VERIFICATION:
                    raise
                report = getattr(exc, "report", None)
                self.suites.append(SuiteResult(name=pipeline.value, pipeline=pipeline.value,
                                               status=SuiteStatus.FAILED, report=report,
                                               message=f"{exc.__class__.__name__}: {exc.message}",
                                               details=self._error_details(exc)))
                self._failed.add(pipeline)
                logger.warning("pipeline_failed", pipeline=pipeline.value, error=exc.message)
            else:
                logger.info("pipeline_finished", pipeline=pipeline.value,
                            seconds=round(time.perf_counter() - start, 3))
        failed = any(suite.status is not SuiteStatus.PASSED for suite in self.suites)
        return RunReport(
            scenario=self.scenario.name,
            field=self.field.name,
            status=SuiteStatus.FAILED if failed else SuiteStatus.PASSED,
            exit_code=EXIT_VERIFICATION if failed else 0,
            pipelines=[p.value for p in self.pipelines],
            suites=self.suites,
            hilbert=self.hilbert,
            dimensions=self.dimensions,
            relations=self.relations,
            objects=self.objects,
        )

    @staticmethod
    def _error_details(exc: YDTwistError) -> dict:
        index = getattr(exc, "index", None)
        return {"index": index} if index is not None else {}

    def _run_nichols(self) -> None:
        for name, module in (("W", self.W.module), ("V", self.V.module)):
            N = nichols_truncate(module, self.cap, self.dim_bound)
            key = f"{name}_nichols"
            setattr(self, key, N)
            self.hilbert[name] = hilbert_series(N)
            self.dimensions[key] = N.dim
            report = AxiomReport(subject=key)
            report.merge(check_poincare_symmetry(N))
            report.merge(check_primitives(N))
            self._symmetrizer_oracle(N, report)
            report.checked.append("complete")
            message = ""
            if not N.complete:
                report.failures.append(AxiomFailure(axiom="complete", indices=[N.cap]))
                message = f"𝔅({name}) does not vanish by degree {N.cap}"
            self._suite(key, Pipeline.NICHOLS, report, message=message, dims=list(N.dims))
            self._register(key, lambda N=N, key=key: yd_bialgebra_to_export(N.algebra, key))

    def _symmetrizer_oracle(self, N: NicholsTruncation, report: AxiomReport) -> None:
        """Recursively built 𝔖_d against the sum over all braid lifts."""
        T = N.tensor
        for d in range(2, min(ORACLE_MAX_DEGREE, N.cap) + 1):
            if T.n ** d > ORACLE_MAX_SIZE:
                break
            report.checked.append("symmetrizer_oracle")
            if not T.symmetrizer(d) == brute_force_symmetrizer(T, d):
                report.failures.append(AxiomFailure(axiom="symmetrizer_oracle", indices=[d]))

    def _run_biproduct(self) -> None:
        for name, N, base, generators in (("U", self.W_nichols, self.K, self.W),
                                          ("A", self.V_nichols, self.H, self.V)):
            B = build_biproduct(N.algebra, base)
            setattr(self, name, B)
            self.dimensions[name] = B.A.dim
            report = AxiomReport(subject=name).merge(B.report)
            grades = set(generators.grades)
            if len(grades) == 1:
                report.merge(antipode_square_report(B, grades.pop()), prefix="antipode_square")
            report.checked.append("recover_R")
            if not same_yd_structure(recover_R(B.A, B.H, B.j, B.pi), B.R):
                report.failures.append(AxiomFailure(axiom="recover_R", indices=[]))
            self._suite(f"biproduct_{name}", Pipeline.BIPRODUCT, report)
            self.relations[name] = relations_report(B.A, self._generators(B, N, base))
            self._register(name, lambda B=B, name=name: bialgebra_to_export(B.A, name))

    @staticmethod
    def _generators(B: Biproduct, N: NicholsTruncation, base: GroupAlgebra) -> Dict[str, int]:
        generators = {}
        for r in range(len(base.orders)):
            g = base.generator_index(r)
            generators[base.labels[g]] = B.element(0, g)
        for i, x in enumerate(N.block(1)):
            generators[N.V.labels[i]] = B.element(x, 0)
        return generators

    def _run_op_iso(self) -> None:
        for name, B in (("U", self.U), ("A", self.A)):
            iso = op_biproduct(B)
            self._suite(f"op_iso_{name}", Pipeline.OP_ISO, iso.report)
            self._register(f"op_iso_{name}", lambda iso=iso: matrix_to_export(iso.matrix))

    def _run_dual_iso(self) -> None:
        for name, B in (("U", self.U), ("A", self.A)):
            iso = dual_biproduct(B)
            self._suite(f"dual_iso_{name}", Pipeline.DUAL_ISO, iso.report)
            self._register(f"dual_iso_{name}", lambda iso=iso: matrix_to_export(iso.matrix))

    def _run_datum(self) -> None:
        datum = build_group_datum(self.datum, self.cap, self.dim_bound)
        self.twist_datum = datum
        self._suite("datum", Pipeline.DATUM, datum.report, rank=datum.lifted.form.rank())
        self._register("tau", lambda: matrix_to_export(datum.tau.matrix))
        self._register("beta", lambda: matrix_to_export(datum.beta.matrix))
        self._register("lifted_beta", lambda: matrix_to_export(datum.lifted.form.matrix))

    def _run_twist(self) -> None:
        datum = self.twist_datum
        result = twist_datum(datum)
        self.twist = result
        smash, twisted = result.smash, result.twisted
        self._suite("beta_smash_tau", Pipeline.TWIST, smash.report, rank=smash.form.rank())
        self._suite("cocycle", Pipeline.TWIST, twisted.cocycle.report)
        self._suite("twisted_bialgebra", Pipeline.TWIST, twisted.report)
        self._suite("phi_generators", Pipeline.TWIST, phi_generators(datum, smash.form).report)
        self.dimensions["twist"] = twisted.bialgebra.dim
        self._register("smash_form", lambda: matrix_to_export(smash.form.matrix))
        self._register("sigma", lambda: matrix_to_export(twisted.cocycle.sigma.matrix))
        self._register("twist", lambda: bialgebra_to_export(twisted.bialgebra, "twist"))

    def _run_reduce(self) -> None:
        reduced = reduce_datum(self.twist_datum, self.cap, self.dim_bound, source=self.twist)
        self._suite("reduce", Pipeline.REDUCE, reduced.report,
                    left_perp=len(reduced.left_perp), right_perp=len(reduced.right_perp))
        self.dimensions["reduced_twist"] = reduced.F.target.dim
        self._register("reduced_twist", lambda: bialgebra_to_export(reduced.twist.twisted.bialgebra, "reduced_twist"))
        self._register("F", lambda: matrix_to_export(reduced.F.matrix))


def render_text_report(report: RunReport, max_failures: Optional[int] = None) -> str:
    """Human-readable run report, listing at most ``max_failures`` counterexamples per suite."""
    limit = max_failures if max_failures is not None else settings.MAX_LISTED_FAILURES
    lines = [
        f"scenario: {report.scenario}",
        f"field: {report.field}",
        f"pipelines: {', '.join(report.pipelines)}",
        f"status: {report.status.value} (exit {report.exit_code})",
        "",
    ]
    for name, series in sorted(report.hilbert.items()):
        lines.append(f"hilbert {name}: {series}")
    for name, dim in sorted(report.dimensions.items()):
        lines.append(f"dim {name}: {dim}")
    lines.append("")
    for suite in report.suites:
        header = f"[{suite.status.value.upper()}] {suite.pipeline}/{suite.name}"
        if suite.message:
            header += f": {suite.message}"
        lines.append(header)
        if suite.report is None:
            continue
        lines.append(f"  checked {len(suite.report.checked)} axioms")
        for failure in suite.report.failures[:limit]:
            where = ", ".join(failure.labels) or ", ".join(str(i) for i in failure.indices)
            diff = "; ".join(f"{k}: {v}" for k, v in failure.discrepancy.items())
            lines.append(f"  - {failure.axiom} at ({where}) {diff}".rstrip())
        hidden = len(suite.report.failures) - limit
        if hidden > 0:
            lines.append(f"  ... {hidden} more in report.json")
    return "\n".join(lines) + "\n"
