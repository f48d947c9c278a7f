"""
Propagación de variables de Ptolemy y θ a través de las capas
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, TypeVar

from loguru import logger

from src.core.algebra.number_field import NumberFieldElement
from src.core.exceptions import (
    AssignmentError,
    DegenerateAssignment,
    InitialLengthMismatch,
    ZeroScalar,
)
from src.infrastructure.services.bundle import (
    LayeredTriangulation,
    ObstructionData,
    face_equations,
    ptolemy_equations,
    trivial_obstruction,
)

# NumberFieldElement o DualElement: ambos tienen +, -, *, /, neg e is_zero()
V = TypeVar("V")


def _signed(value: V, sign: int) -> V:
    return value if sign > 0 else -value


@dataclass(frozen=True)
class PtolemyState:
    """Valores c_0 .. c_{3n+N-1} para una obstrucción dada"""

    values: Tuple[NumberFieldElement, ...]
    obstruction: ObstructionData

    def initial(self, n: int) -> Tuple[NumberFieldElement, ...]:
        return self.values[:3 * n]


@dataclass(frozen=True)
class ThetaState:
    values: Tuple[NumberFieldElement, ...]


def propagate_values(
    initial: Sequence[V], L: LayeredTriangulation, obstruction: ObstructionData
) -> List[V]:
    """Resuelve P_i = 0 para la variable de arriba, capa por capa"""
    values = list(initial)
    for equation in ptolemy_equations(L, obstruction):
        sign, top, bottom = equation.terms[0]
        rest = None
        for s, u, v in equation.terms[1:]:
            term = _signed(values[u] * values[v], s)
            rest = term if rest is None else rest + term
        value = -rest / _signed(values[bottom], sign)
        if value.is_zero():
            raise DegenerateAssignment(
                f"La variable c{top} de la capa {equation.layer} se anula"
            )
        values.append(value)
    return values


def _resolve(L: LayeredTriangulation, obstruction: Optional[ObstructionData]) -> ObstructionData:
    return obstruction if obstruction is not None else trivial_obstruction(L)


def propagate_c(
    initial: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
    obstruction: Optional[ObstructionData] = None,
) -> PtolemyState:
    obstruction = _resolve(L, obstruction)
    if len(initial) != 3 * L.n:
        raise DegenerateAssignment(
            f"Se esperaban {3 * L.n} valores iniciales y se recibieron {len(initial)}",
            invariant="initial_length",
        )
    for i, value in enumerate(initial):
        if value.is_zero():
            raise DegenerateAssignment(f"El valor inicial c{i} es cero")
    values = propagate_values(initial, L, obstruction)
    logger.debug(f"Propagación de Ptolemy: {L.num_layers} variables nuevas")
    return PtolemyState(tuple(values), obstruction)


def closure_images(values: Sequence[V], L: LayeredTriangulation) -> List[V]:
    """c'_i = signo * c_destino según el mapa de cierre"""
    return [_signed(values[target], sign) for target, sign in L.closure.edge_map]


def closure_residual_c(state: PtolemyState, L: LayeredTriangulation) -> List[NumberFieldElement]:
    images = closure_images(state.values, L)
    return [image - value for image, value in zip(images, state.values)]


def propagate_theta_values(
    c_values: Sequence[NumberFieldElement],
    initial_theta: Sequence[V],
    L: LayeredTriangulation,
    obstruction: ObstructionData,
) -> List[V]:
    theta = list(initial_theta)
    for equation in face_equations(L, obstruction):
        sign, top, unknown = equation.terms[0]
        rest = None
        for s, u, f in equation.terms[1:]:
            term = _signed(theta[f] * c_values[u], s)
            rest = term if rest is None else rest + term
        if unknown != len(theta):
            raise AssignmentError(f"La cara {unknown} se resuelve fuera de orden", invariant="face_order")
        theta.append(-rest / _signed(c_values[top], sign))
    return theta


def propagate_theta(
    state: PtolemyState,
    initial_theta: Sequence[NumberFieldElement],
    L: LayeredTriangulation,
) -> ThetaState:
    if len(initial_theta) != 2 * L.n:
        raise InitialLengthMismatch(
            f"Se esperaban {2 * L.n} valores θ iniciales y se recibieron {len(initial_theta)}"
        )
    values = propagate_theta_values(state.values, initial_theta, L, state.obstruction)
    return ThetaState(tuple(values))


def theta_closure_images(
    theta: Sequence[V], L: LayeredTriangulation, obstruction: ObstructionData
) -> List[V]:
    return [
        _signed(theta[target], sign * closure_sign)
        for (target, sign), closure_sign in zip(L.closure.face_map, obstruction.closure_face_signs)
    ]


def closure_residual_theta(
    state: PtolemyState, theta_state: ThetaState, L: LayeredTriangulation
) -> List[NumberFieldElement]:
    images = theta_closure_images(theta_state.values, L, state.obstruction)
    return [image - value for image, value in zip(images, theta_state.values)]


def scaling_act(
    initial: Sequence[NumberFieldElement], k: NumberFieldElement, degrees: Sequence[int]
) -> Tuple[NumberFieldElement, ...]:
    """(k^{d_0} c_0, ..., k^{d_{3n-1}} c_{3n-1})"""
    if k.is_zero():
        raise ZeroScalar("El factor de escala debe ser no nulo")
    if len(degrees) < len(initial):
        raise InitialLengthMismatch("Faltan exponentes de incidencia para la acción de escala")
    return tuple(k ** d * c for c, d in zip(initial, degrees))


def galois_act(
    values: Sequence[NumberFieldElement], image: NumberFieldElement
) -> Tuple[NumberFieldElement, ...]:
    """Aplica a cada valor el homomorfismo que envía el generador a `image`"""
    return tuple(v.substitute(image) for v in values)
