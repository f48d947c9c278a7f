"""
Orquestación de trabajos: construcción, verificación de soluciones y cálculo
de invariantes
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.core.algebra import LaurentPolynomial, loop_equal
from src.core.algebra.number_field import format_rational
from src.core.config import settings
from src.core.exceptions import AssignmentError, LayeredTorsionError
from src.core.models import (
    BuildReport,
    CheckResult,
    CheckStatus,
    DemoReport,
    InvariantsReport,
    JobConfig,
    Method,
    PolynomialBlock,
    VerifyReport,
)
from src.infrastructure.services.bundle import (
    LayeredTriangulation,
    ObstructionData,
    build_layered,
    face_equations,
    format_layered_dump,
    ptolemy_equations,
)
from src.infrastructure.services.fixtures import (
    FixtureCase,
    m036_cases,
    m036_layered,
    m036_listings,
)
from src.infrastructure.services.obstruction import resolve_obstruction
from src.infrastructure.services.oneloop import TorsionResult, compute, norm_lower_bound
from src.infrastructure.services.ptolemy import (
    closure_residual_c,
    closure_residual_theta,
    propagate_c,
    propagate_theta,
)
from src.infrastructure.services.surface_parser import (
    ObstructionSpec,
    Solution,
    load_monodromy,
    load_obstruction,
    load_solution,
)


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    status = CheckStatus.PASS if ok else CheckStatus.FAIL
    if not ok:
        logger.warning(f"Verificación fallida: {name} {detail}".rstrip())
    return CheckResult(name=name, status=status, detail=detail)


def polynomial_block(result: TorsionResult) -> PolynomialBlock:
    p = result.polynomial
    return PolynomialBlock(
        n=result.n,
        method=result.method,
        obstruction=result.obstruction,
        min_exp=p.min_exp,
        max_exp=p.max_exp,
        coefficients=[str(c) for c in p.coefficients()],
        text=str(p),
        span=result.span,
        norm_bound=format_rational(norm_lower_bound(p, result.n)),
        value_at_one=str(result.value_at_one),
    )


class TorsionPipeline:
    """Ejecuta los trabajos de la línea de comandos sobre una triangulación en capas"""

    def __init__(self, max_workers: Optional[int] = None):
        self.max_workers = max_workers or settings.max_workers
        self._layered: Dict[str, LayeredTriangulation] = {}

    # Carga

    def layered(self, monodromy: Path) -> LayeredTriangulation:
        key = str(monodromy)
        if key not in self._layered:
            phi = load_monodromy(key)
            self._layered[key] = build_layered(phi)
        return self._layered[key]

    @staticmethod
    def _require(job: JobConfig) -> Path:
        if job.monodromy is None:
            raise LayeredTorsionError("Falta el archivo de monodromía", invariant="job_config")
        return job.monodromy

    # Build

    def build(self, monodromy: Path, obstruction: str = "trivial") -> BuildReport:
        L = self.layered(monodromy)
        data = resolve_obstruction(load_obstruction(obstruction), L)
        logger.info(f"Construida la triangulación en capas de {monodromy}")
        return BuildReport(
            monodromy=str(monodromy),
            n=L.n,
            layers=L.num_layers,
            punctures=L.num_punctures,
            genus=L.genus,
            boundary_components=L.boundary_components,
            dump=format_layered_dump(L, data),
            ptolemy_equations=[eq.text() for eq in ptolemy_equations(L, data)],
            face_equations=[eq.text() for eq in face_equations(L, data)],
        )

    # Verify

    def verify_solution(
        self, L: LayeredTriangulation, solution: Solution, spec: ObstructionSpec
    ) -> VerifyReport:
        data = resolve_obstruction(spec, L)
        state = propagate_c(solution.c, L, data)
        residual = closure_residual_c(state, L)
        checks = [
            _check("nonzero_values", all(not v.is_zero() for v in state.values)),
            _check(
                "closure_residual_c",
                all(r.is_zero() for r in residual),
                f"{sum(1 for r in residual if not r.is_zero())} componente(s) no nulas",
            ),
        ]
        theta_residual = None
        if solution.theta is not None:
            theta_state = propagate_theta(state, solution.theta, L)
            theta_residual = closure_residual_theta(state, theta_state, L)
            checks.append(
                _check("closure_residual_theta", all(r.is_zero() for r in theta_residual))
            )
        logger.info(f"Verificada la solución {solution.name} con la obstrucción {data.label}")
        return VerifyReport(
            solution=solution.name,
            field=solution.field.header(),
            obstruction=data.summary(),
            c_residual=[str(r) for r in residual],
            theta_residual=[str(r) for r in theta_residual] if theta_residual is not None else None,
            checks=checks,
        )

    def verify(self, job: JobConfig) -> List[VerifyReport]:
        L = self.layered(self._require(job))
        spec = load_obstruction(job.obstruction)
        return [self.verify_solution(L, load_solution(str(path)), spec) for path in job.solutions]

    # Invariants

    def compute_all(
        self,
        L: LayeredTriangulation,
        solution: Solution,
        data: ObstructionData,
        ns: Sequence[int],
        methods: Sequence[Method],
    ) -> List[TorsionResult]:
        """Cálculos independientes en paralelo; el resultado se ordena por (n, método)"""
        keys = sorted(((n, Method(m)) for n in ns for m in methods), key=lambda k: (k[0], k[1].value))
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = {key: executor.submit(compute, key[0], key[1], solution.c, L, data) for key in keys}
            return [futures[key].result() for key in keys]

    def invariants_for(
        self,
        L: LayeredTriangulation,
        solution: Solution,
        spec: ObstructionSpec,
        ns: Sequence[int],
        methods: Sequence[Method],
        expected: Optional[Dict[int, LaurentPolynomial]] = None,
    ) -> InvariantsReport:
        data = resolve_obstruction(spec, L)
        results = self.compute_all(L, solution, data, ns, methods)
        by_key: Dict[Tuple[int, Method], TorsionResult] = {(r.n, r.method): r for r in results}
        checks: List[CheckResult] = []

        for n in sorted(set(ns)):
            full = by_key.get((n, Method.FULL_MATRIX))
            reduced = by_key.get((n, Method.REDUCED_JACOBIAN))
            if full is not None and reduced is not None:
                checks.append(_check(f"path_equality n={n}", loop_equal(full.polynomial, reduced.polynomial)))
            if reduced is not None:
                raw = reduced.raw
                degree = n * L.n
                checks.append(_check(
                    f"monic n={n}",
                    raw.max_exp == degree and raw.leading_coefficient() == 1,
                    f"grado {raw.max_exp}, se esperaba {degree}",
                ))
            if expected and n in expected:
                for result in (full, reduced):
                    if result is not None:
                        checks.append(_check(
                            f"expected n={n} {result.method.value}",
                            loop_equal(result.polynomial, expected[n]),
                        ))

        logger.info(f"Invariantes de {solution.name} ({data.label}): {len(results)} polinomio(s)")
        return InvariantsReport(
            solution=solution.name,
            field=solution.field.header(),
            obstruction=data.summary(),
            polynomials=[polynomial_block(r) for r in results],
            checks=checks,
        )

    def invariants(self, job: JobConfig) -> List[InvariantsReport]:
        L = self.layered(self._require(job))
        spec = load_obstruction(job.obstruction)
        return [
            self.invariants_for(L, load_solution(str(path)), spec, job.ns, job.methods)
            for path in job.solutions
        ]

    # Demo

    def _cross_evaluation(self, L: LayeredTriangulation, cases: Sequence[FixtureCase]) -> CheckResult:
        """La solución trivial no debe cerrar con los signos de la otra clase"""
        trivial, signed = cases
        try:
            report = self.verify_solution(L, trivial.solution, signed.obstruction)
            rejected = not report.passed
        except AssignmentError:
            rejected = True
        return _check("cross_evaluation", rejected, "solución trivial con obstrucción con signos")

    def demo(
        self,
        ns: Sequence[int] = (2, 3),
        methods: Sequence[Method] = (Method.FULL_MATRIX, Method.REDUCED_JACOBIAN),
    ) -> DemoReport:
        L = m036_layered()
        cases = m036_cases()
        checks = [
            _check(
                "listings",
                all(a.same_as(b) for a, b in zip(L.mapping_class.triangulations(), m036_listings())),
            ),
        ]
        reports = []
        for case in cases:
            verified = self.verify_solution(L, case.solution, case.obstruction)
            checks.extend(
                c.model_copy(update={"name": f"{case.name}: {c.name}"}) for c in verified.checks
            )
            expected = {n: case.expected(n) for n in ns}
            report = self.invariants_for(L, case.solution, case.obstruction, ns, methods, expected)
            for block in report.polynomials:
                checks.append(_check(
                    f"{case.name}: norm_bound n={block.n} {block.method}",
                    block.norm_bound == str(2 * L.genus - 1),
                    f"cota {block.norm_bound}",
                ))
            reports.append(report)
        checks.append(self._cross_evaluation(L, cases))
        return DemoReport(reports=reports, checks=checks)
