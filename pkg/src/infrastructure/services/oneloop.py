"""
Polinomios 1-loop δ₂, δ₃ y de torsión τ₂, τ₃ de una triangulación en capas

Dos caminos independientes:
  - matriz completa: filas t·x_i - x'_i para las variables iniciales y filas
    de derivadas de P_i/c_B (n = 3) o E/c_T (n = 2) sobre todas las variables
  - jacobiano reducido: det(tI - J) con J la derivada de la composición
    propagación + cierre
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.domains import QQ

from src.core.algebra import (
    LaurentPolynomial,
    Matrix,
    NumberField,
    NumberFieldElement,
    Rational,
    characteristic_polynomial,
    det_laurent,
    dual_eval,
    dual_jacobian,
    normalize_loop,
)
from src.core.exceptions import ResidualNonzero
from src.core.models import Method
from src.infrastructure.services.bundle import (
    LayeredTriangulation,
    ObstructionData,
    face_equations,
    ptolemy_equations,
    trivial_obstruction,
)
from src.infrastructure.services.ptolemy import (
    PtolemyState,
    closure_images,
    closure_residual_c,
    propagate_c,
    propagate_theta_values,
    propagate_values,
    theta_closure_images,
)


@dataclass(frozen=True)
class TorsionResult:
    """Polinomio calculado (forma canónica) junto al determinante sin normalizar"""

    n: int
    polynomial: LaurentPolynomial
    raw: LaurentPolynomial
    method: Method
    obstruction: str

    @property
    def value_at_one(self) -> NumberFieldElement:
        return self.raw.evaluate(1)

    @property
    def span(self) -> int:
        return self.polynomial.max_exp - self.polynomial.min_exp


def _result(n: int, raw: LaurentPolynomial, method: Method, obstruction: ObstructionData) -> TorsionResult:
    polynomial = normalize_loop(raw)
    logger.debug(f"n={n} {method.value} [{obstruction.label}]: {polynomial}")
    return TorsionResult(n, polynomial, raw, method, obstruction.summary())


def checked_state(
    initial_c: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> PtolemyState:
    """Propaga y exige residuo de cierre nulo"""
    state = propagate_c(initial_c, L, obstruction)
    residual = closure_residual_c(state, L)
    bad = [i for i, r in enumerate(residual) if not r.is_zero()]
    if bad:
        raise ResidualNonzero(
            f"El residuo de cierre no se anula en c{bad[0]} ({residual[bad[0]]}) "
            f"con la obstrucción '{state.obstruction.label}'"
        )
    return state


# Camino reducido

def monodromy_jacobian(state: PtolemyState, L: LayeredTriangulation) -> Matrix[NumberFieldElement]:
    """J[i][j] = ∂c'_i/∂c_j de la composición propagación + cierre"""
    initial = state.initial(L.n)

    def closed(args):
        return closure_images(propagate_values(args, L, state.obstruction), L)

    rows = dual_jacobian(closed, initial, range(3 * L.n))
    return Matrix.from_rows(rows)


def theta_monodromy_matrix(state: PtolemyState, L: LayeredTriangulation) -> Matrix[NumberFieldElement]:
    """Matriz de la aplicación lineal θ ↦ θ' (columna j = imagen del j-ésimo vector básico)"""
    field = state.values[0].field
    size = 2 * L.n
    columns = []
    for j in range(size):
        basis = [field.one() if k == j else field.zero() for k in range(size)]
        theta = propagate_theta_values(state.values, basis, L, state.obstruction)
        columns.append(theta_closure_images(theta, L, state.obstruction))
    return Matrix.from_rows([[columns[j][i] for j in range(size)] for i in range(size)])


def torsion3_reduced(
    initial_c: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> TorsionResult:
    state = checked_state(initial_c, L, obstruction)
    raw = characteristic_polynomial(monodromy_jacobian(state, L))
    return _result(3, raw, Method.REDUCED_JACOBIAN, state.obstruction)


def torsion2_reduced(
    initial_c: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> TorsionResult:
    state = checked_state(initial_c, L, obstruction)
    raw = characteristic_polynomial(theta_monodromy_matrix(state, L))
    return _result(2, raw, Method.REDUCED_JACOBIAN, state.obstruction)


# Camino de matriz completa

def _identification_rows(
    size: int, targets: Sequence[Tuple[int, int]], field: NumberField
) -> List[List[LaurentPolynomial]]:
    """Filas t·x_i - signo·x_destino para las variables iniciales"""
    t = LaurentPolynomial.monomial(field, 1)
    zero = LaurentPolynomial.zero(field)
    rows = []
    for i, (target, sign) in enumerate(targets):
        row = [zero] * size
        row[i] = t
        row[target] = row[target] - LaurentPolynomial.constant(field, sign)
        rows.append(row)
    return rows


def ptolemy_block(state: PtolemyState, L: LayeredTriangulation) -> List[List[NumberFieldElement]]:
    """Filas ∂(P_i/c_B(i))/∂c_j sobre todas las variables de aristas"""
    size = L.num_edge_vars
    rows = []
    for equation in ptolemy_equations(L, state.obstruction):

        def scaled(args, equation=equation):
            total = None
            for s, u, v in equation.terms:
                term = args[u] * args[v]
                term = term if s > 0 else -term
                total = term if total is None else total + term
            return total / args[equation.bottom]

        rows.append(list(dual_eval(scaled, state.values, range(size)).partials))
    return rows


def face_block(state: PtolemyState, L: LayeredTriangulation) -> List[List[NumberFieldElement]]:
    """Filas ∂(E/c_T(i))/∂θ_j; las ecuaciones de caras son lineales en θ"""
    field = state.values[0].field
    size = L.num_face_vars
    rows = []
    for equation in face_equations(L, state.obstruction):
        top = state.values[equation.terms[0][1]]
        acc: Dict[int, NumberFieldElement] = {}
        for s, u, f in equation.terms:
            term = state.values[u] / top
            acc[f] = acc.get(f, field.zero()) + (term if s > 0 else -term)
        rows.append([acc.get(j, field.zero()) for j in range(size)])
    return rows


def _constant_rows(rows: Sequence[Sequence[NumberFieldElement]]) -> List[List[LaurentPolynomial]]:
    return [[LaurentPolynomial.constant(x.field, x) for x in row] for row in rows]


def oneloop3_matrix(state: PtolemyState, L: LayeredTriangulation) -> Matrix[LaurentPolynomial]:
    field = state.values[0].field
    rows = _identification_rows(L.num_edge_vars, L.closure.edge_map, field)
    rows += _constant_rows(ptolemy_block(state, L))
    return Matrix.from_rows(rows)


def oneloop2_matrix(state: PtolemyState, L: LayeredTriangulation) -> Matrix[LaurentPolynomial]:
    field = state.values[0].field
    targets = [
        (target, sign * closure_sign)
        for (target, sign), closure_sign in zip(L.closure.face_map, state.obstruction.closure_face_signs)
    ]
    rows = _identification_rows(L.num_face_vars, targets, field)
    rows += _constant_rows(face_block(state, L))
    return Matrix.from_rows(rows)


def oneloop3_full(
    initial_c: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> TorsionResult:
    state = checked_state(initial_c, L, obstruction)
    raw = det_laurent(oneloop3_matrix(state, L))
    return _result(3, raw, Method.FULL_MATRIX, state.obstruction)


def oneloop2_full(
    initial_c: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> TorsionResult:
    state = checked_state(initial_c, L, obstruction)
    raw = det_laurent(oneloop2_matrix(state, L))
    return _result(2, raw, Method.FULL_MATRIX, state.obstruction)


_DISPATCH = {
    (3, Method.REDUCED_JACOBIAN): torsion3_reduced,
    (2, Method.REDUCED_JACOBIAN): torsion2_reduced,
    (3, Method.FULL_MATRIX): oneloop3_full,
    (2, Method.FULL_MATRIX): oneloop2_full,
}


def compute(
    n: int,
    method: Method,
    initial_c: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> TorsionResult:
    try:
        fn = _DISPATCH[(n, Method(method))]
    except KeyError:
        raise ValueError(f"No hay cálculo para n={n}; solo n = 2 o 3")
    return fn(initial_c, L, obstruction if obstruction is not None else trivial_obstruction(L))


def norm_lower_bound(p: LaurentPolynomial, n: int) -> Rational:
    """(exponente máximo - exponente mínimo) / n"""
    return QQ(p.max_exp - p.min_exp, n)
