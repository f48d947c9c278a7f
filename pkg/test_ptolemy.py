#!/usr/bin/env python3
"""
Pruebas de la propagación de Ptolemy y θ, residuos de cierre y acciones de
escala y de Galois
"""

import sys
from pathlib import Path

import pytest

# Agregar el directorio raíz al path
sys.path.append(str(Path(__file__).parent))

from src.core.algebra import to_rational
from src.core.exceptions import DegenerateAssignment, InitialLengthMismatch, ZeroScalar
from src.infrastructure.services.bundle import edge_puncture_degrees
from src.infrastructure.services.ptolemy import (
    closure_residual_c,
    closure_residual_theta,
    galois_act,
    propagate_c,
    propagate_theta,
    scaling_act,
)


def _all_zero(values):
    return all(v.is_zero() for v in values)


# Propagación de c

def test_first_layers_generic(L, generic_c, trivial_data):
    c = propagate_c(generic_c, L, trivial_data).values
    assert len(c) == 13
    assert c[9] == to_rational("294/23")
    assert c[10] == to_rational("-43/13")
    assert c[11] == to_rational("1828/437")
    assert c[12] == (c[9] * c[10] - c[1] * c[6]) / c[4]
    assert not c[12].is_zero()


def test_default_obstruction_is_trivial(L, generic_c, trivial_data):
    assert propagate_c(generic_c, L).values == propagate_c(generic_c, L, trivial_data).values


def test_signed_signs_change_propagation(L, generic_c, signed_data):
    c = propagate_c(generic_c, L, signed_data).values
    # c9 c8 + c2 c6 - c4 c7 = 0
    assert c[9] == (c[4] * c[7] - c[2] * c[6]) / c[8]


def test_wrong_length(L, generic_c):
    with pytest.raises(DegenerateAssignment) as excinfo:
        propagate_c(generic_c[:8], L)
    assert excinfo.value.invariant == "initial_length"


def test_zero_initial_value(L, generic_c, QF):
    values = list(generic_c)
    values[3] = QF.zero()
    with pytest.raises(DegenerateAssignment):
        propagate_c(values, L)


def test_zero_propagated_value(L, QF):
    """c2 c6 + c4 c7 = 0 anula c9"""
    values = [QF.from_rational(v) for v in (1, 1, 1, 1, 1, 1, 1, -1, 1)]
    with pytest.raises(DegenerateAssignment):
        propagate_c(values, L)


# Residuos de cierre

def test_trivial_solution_closes(L, trivial_case, trivial_data):
    state = propagate_c(trivial_case.solution.c, L, trivial_data)
    b = trivial_case.solution.field.gen()
    assert state.values[9] == b - 2
    assert _all_zero(closure_residual_c(state, L))


def test_signed_solution_closes(L, signed_case, signed_data):
    state = propagate_c(signed_case.solution.c, L, signed_data)
    assert _all_zero(closure_residual_c(state, L))


def test_perturbed_solution_does_not_close(L, trivial_case, trivial_data):
    values = list(trivial_case.solution.c)
    values[8] = values[8] * 2
    state = propagate_c(values, L, trivial_data)
    assert not _all_zero(closure_residual_c(state, L))


def test_trivial_solution_under_signed_signs(L, trivial_case, signed_data):
    state = propagate_c(trivial_case.solution.c, L, signed_data)
    b = trivial_case.solution.field.gen()
    assert state.values[9] == -b
    assert state.values[10] == -1
    assert not _all_zero(closure_residual_c(state, L))


# Propagación de θ

def test_first_theta_formula(L, generic_c, QF):
    state = propagate_c(generic_c, L)
    theta0 = [QF.from_rational(k + 1) for k in range(6)]
    theta = propagate_theta(state, theta0, L).values
    c = state.values
    assert len(theta) == 14
    # -c9 θ6 + c6 θ5 - c4 θ0 = 0
    assert theta[6] == (c[6] * theta[5] - c[4] * theta[0]) / c[9]
    # c9 θ7 + c7 θ5 + c2 θ0 = 0
    assert theta[7] == -(c[7] * theta[5] + c[2] * theta[0]) / c[9]


def test_theta_is_linear(L, generic_c, QF):
    state = propagate_c(generic_c, L)
    x = [QF.from_rational(v) for v in (1, -2, 3, 0, 5, 7)]
    y = [QF.from_rational(v) for v in (4, 1, -1, 2, 0, 3)]
    sx = propagate_theta(state, x, L).values
    sy = propagate_theta(state, y, L).values
    sxy = propagate_theta(state, [u + v for u, v in zip(x, y)], L).values
    assert sxy == tuple(u + v for u, v in zip(sx, sy))
    s3x = propagate_theta(state, [3 * u for u in x], L).values
    assert s3x == tuple(3 * u for u in sx)


def test_zero_theta(L, generic_c, QF):
    state = propagate_c(generic_c, L)
    theta = propagate_theta(state, [QF.zero()] * 6, L)
    assert _all_zero(theta.values)
    assert _all_zero(closure_residual_theta(state, theta, L))


def test_theta_wrong_length(L, generic_c, QF):
    state = propagate_c(generic_c, L)
    with pytest.raises(InitialLengthMismatch) as excinfo:
        propagate_theta(state, [QF.one()] * 5, L)
    assert excinfo.value.invariant == "initial_length"


# Acciones

def test_scaling_by_one(L, trivial_case):
    c = trivial_case.solution.c
    one = trivial_case.solution.field.one()
    assert scaling_act(c, one, edge_puncture_degrees(L)) == tuple(c)


def test_scaling_is_equivariant(L, generic_c, QF):
    degrees = edge_puncture_degrees(L)
    k = QF.from_rational(to_rational("3/2"))
    state = propagate_c(generic_c, L)
    scaled = propagate_c(scaling_act(generic_c, k, degrees), L)
    assert scaled.values == tuple(k ** d * v for v, d in zip(state.values, degrees))


def test_scaling_keeps_closure(L, trivial_case, trivial_data):
    K = trivial_case.solution.field
    k = K.gen() + 3
    scaled = scaling_act(trivial_case.solution.c, k, edge_puncture_degrees(L))
    assert _all_zero(closure_residual_c(propagate_c(scaled, L, trivial_data), L))


def test_scaling_by_zero(L, generic_c, QF):
    with pytest.raises(ZeroScalar):
        scaling_act(generic_c, QF.zero(), edge_puncture_degrees(L))


def test_galois_equivariance(L, trivial_case, trivial_data):
    K = trivial_case.solution.field
    image = 2 - K.gen()
    state = propagate_c(trivial_case.solution.c, L, trivial_data)
    conjugate = propagate_c(galois_act(trivial_case.solution.c, image), L, trivial_data)
    assert conjugate.values == galois_act(state.values, image)
    assert _all_zero(closure_residual_c(conjugate, L))
