#!/usr/bin/env python3
"""
Pruebas de la triangulación en capas, el cierre, las ecuaciones y los datos
de obstrucción
"""

import sys
from dataclasses import replace
from pathlib import Path

import pytest

# Agregar el directorio raíz al path
sys.path.append(str(Path(__file__).parent))

from src.core.exceptions import BundleError, ClosureMismatch, InvalidCocycle, ParseError
from src.core.models import ObstructionMode
from src.infrastructure.services.bundle import (
    build_layered,
    dump_record,
    edge_puncture_degrees,
    face_equations,
    format_layered_dump,
    make_obstruction,
    parse_layered_dump,
    ptolemy_equations,
    require_valid_obstruction,
    trivial_obstruction,
    validate_obstruction,
)
from src.infrastructure.services.obstruction import (
    ShortEdgeCocycle,
    cocycle_space,
    cocycle_to_equation_signs,
    enumerate_cocycles,
    find_matching_cocycle,
    matches_equation_signs,
    resolve_obstruction,
    short_edge_classes,
    validate_cocycle,
)
from src.infrastructure.services.surface import MappingClass, identity_isometry
from src.infrastructure.services.surface_parser import ObstructionParser, ObstructionSpec

# Ecuaciones publicadas para m036 como {(u, v): signo}; las caras como {(c, θ): signo}
TRIVIAL_PTOLEMY = [
    {(8, 9): 1, (2, 6): -1, (4, 7): -1},
    {(5, 10): 1, (1, 3): 1, (0, 4): 1},
    {(7, 11): 1, (0, 2): 1, (3, 9): -1},
    {(4, 12): 1, (1, 6): 1, (9, 10): -1},
]
SIGNED_PTOLEMY = [
    {(8, 9): 1, (2, 6): 1, (4, 7): -1},
    {(5, 10): 1, (1, 3): 1, (0, 4): -1},
    {(7, 11): 1, (0, 2): -1, (3, 9): -1},
    {(4, 12): 1, (1, 6): 1, (9, 10): -1},
]
TRIVIAL_FACES = [
    {(2, 0): 1, (9, 7): 1, (7, 5): 1},
    {(4, 0): -1, (6, 5): 1, (9, 6): -1},
    {(1, 3): -1, (10, 9): 1, (4, 4): 1},
    {(0, 3): 1, (3, 4): 1, (10, 8): -1},
    {(2, 6): 1, (11, 11): -1, (3, 1): -1},
    {(9, 6): 1, (0, 1): -1, (11, 10): 1},
    {(1, 8): -1, (12, 13): -1, (9, 7): -1},
    {(10, 8): 1, (6, 7): 1, (12, 12): 1},
]
SIGNED_FACES = [
    {(2, 0): -1, (9, 7): 1, (7, 5): -1},
    {(4, 0): 1, (6, 5): 1, (9, 6): -1},
    {(1, 3): -1, (10, 9): 1, (4, 4): -1},
    {(0, 3): 1, (3, 4): 1, (10, 8): -1},
    {(2, 6): 1, (11, 11): -1, (3, 1): 1},
    {(9, 6): -1, (0, 1): 1, (11, 10): 1},
    {(1, 8): -1, (12, 13): -1, (9, 7): -1},
    {(10, 8): 1, (6, 7): 1, (12, 12): 1},
]
# las ecuaciones de caras publicadas son "= 0": se comparan salvo signo global,
# con los índices de las caras nuevas de las capas 3 y 4 intercambiados
FACE_RELABEL = {10: 11, 11: 10, 12: 13, 13: 12}


def _ptolemy_monomials(equation):
    return {tuple(sorted((u, v))): s for s, u, v in equation.terms}


def _face_key(monomials):
    """Forma normalizada salvo signo global"""
    items = sorted(monomials.items())
    if items[0][1] < 0:
        items = [(k, -s) for k, s in items]
    return tuple(items)


def _computed_faces(L, data):
    return {_face_key({(u, f): s for s, u, f in eq.terms}) for eq in face_equations(L, data)}


def _published_faces(faces):
    return {_face_key({(u, FACE_RELABEL.get(f, f)): s for (u, f), s in eq.items()}) for eq in faces}


# Capas

def test_layer_slots(L):
    assert L.n == 3
    assert L.num_layers == 4
    assert L.num_edge_vars == 13
    assert L.num_face_vars == 14
    for layer in L.layers:
        assert layer.top == 3 * L.n + layer.index - 1
        assert layer.bottom < layer.top
        assert all(v < layer.top for v in layer.equatorial)
        assert layer.top_faces == (2 * L.n + 2 * layer.index - 2, 2 * L.n + 2 * layer.index - 1)
        assert all(f < layer.top_faces[0] for f in layer.bottom_faces)


def test_first_layer(L):
    first = L.layers[0]
    assert first.edge == 8
    assert first.top == 9 and first.bottom == 8
    assert first.bottom_faces == (5, 0)


def test_closure_edges(L):
    assert L.closure.edge_map == (
        (1, 1), (2, 1), (3, 1), (12, 1), (10, 1), (6, 1), (11, 1), (9, 1), (0, -1),
    )


def test_closure_faces(L):
    assert [target for target, _ in L.closure.face_map] == [9, 13, 11, 2, 12, 10]
    assert all(sign == 1 for _, sign in L.closure.face_map)


def test_closure_maps_are_injective(L):
    edges = [target for target, _ in L.closure.edge_map]
    faces = [target for target, _ in L.closure.face_map]
    assert len(set(edges)) == len(edges)
    assert len(set(faces)) == len(faces)


def test_punctures_and_cusps(L):
    assert L.num_punctures == 1
    assert L.genus == 2
    assert L.boundary_components == 1
    assert edge_puncture_degrees(L) == (2,) * 13


def test_empty_flips_rejected(phi):
    with pytest.raises(ClosureMismatch):
        build_layered(MappingClass(phi.source, phi.isometry, ()))


def test_inconsistent_closure(phi):
    with pytest.raises(ClosureMismatch):
        build_layered(MappingClass(phi.source, identity_isometry(9), (8,)))


def test_torus_bundle(torus_phi):
    L = build_layered(torus_phi)
    assert L.n == 1
    assert L.num_layers == 1
    assert L.num_punctures == 1
    assert L.boundary_components == 1


# Ecuaciones

def test_trivial_ptolemy_equations(L, trivial_data):
    equations = ptolemy_equations(L, trivial_data)
    assert [_ptolemy_monomials(eq) for eq in equations] == TRIVIAL_PTOLEMY
    assert equations[0].text() == "c9*c8 - c2*c6 - c4*c7"


def test_signed_ptolemy_equations(L, signed_data):
    equations = ptolemy_equations(L, signed_data)
    assert [_ptolemy_monomials(eq) for eq in equations] == SIGNED_PTOLEMY


def test_trivial_face_equations(L, trivial_data):
    assert _computed_faces(L, trivial_data) == _published_faces(TRIVIAL_FACES)


def test_signed_face_equations(L, signed_data):
    assert _computed_faces(L, signed_data) == _published_faces(SIGNED_FACES)


def test_first_face_equation_text(L, trivial_data):
    first = face_equations(L, trivial_data)[0]
    assert first.unknown == 6
    assert first.text() == "-c9*θ6 + c6*θ5 - c4*θ0"


# Volcado

def test_dump_round_trip(L, signed_data):
    text = format_layered_dump(L, signed_data)
    assert text.splitlines()[0] == "layer 1: T=9 B=8 E=(6,2,7,~4) faces=(6,7) bottom=(5,0) signs=(1,-1,1)"
    assert parse_layered_dump(text) == dump_record(L, signed_data)


def test_dump_rejects_garbage():
    with pytest.raises(ParseError):
        parse_layered_dump("layer uno\nclosure edges: []\nclosure faces: []\n")
    with pytest.raises(ParseError):
        parse_layered_dump("layer 1: T=9 B=8 E=(6,2,7,~4) faces=(6,7) bottom=(5,0) signs=(1,-1,1)\n")


# Datos de obstrucción

def test_trivial_obstruction_is_valid(L, trivial_data):
    assert trivial_data.mode == ObstructionMode.TRIVIAL
    assert validate_obstruction(trivial_data, L)


def test_signed_fixture_is_valid(L, signed_data):
    assert signed_data.mode == ObstructionMode.EQUATION_SIGNS
    assert validate_obstruction(signed_data, L)


def test_flipped_shared_face_sign_is_invalid(L, signed_data):
    bottoms = list(signed_data.bottom_side_signs)
    bottoms[1] = (-bottoms[1][0], bottoms[1][1])
    broken = replace(signed_data, bottom_side_signs=tuple(bottoms))
    assert not validate_obstruction(broken, L)
    with pytest.raises(BundleError):
        require_valid_obstruction(broken, L)


def test_trivial_mode_with_negative_sign_is_invalid(L, trivial_data):
    ptolemy = ((1, -1, 1),) + trivial_data.ptolemy_signs[1:]
    assert not validate_obstruction(replace(trivial_data, ptolemy_signs=ptolemy), L)


def test_wrong_lengths_are_invalid(L, trivial_data):
    assert not validate_obstruction(replace(trivial_data, ptolemy_signs=trivial_data.ptolemy_signs[:2]), L)


def test_make_obstruction_derives_mode(L):
    data = make_obstruction(L, ptolemy=[(1, 1, 1)] * 4, faces=[((1, 1, 1), (1, 1, 1))] * 4)
    assert data.mode == ObstructionMode.TRIVIAL
    data = make_obstruction(L, ptolemy=[(1, 1, -1)] + [(1, 1, 1)] * 3, faces=[((1, 1, 1), (1, 1, 1))] * 4)
    assert data.mode == ObstructionMode.EQUATION_SIGNS


def test_obstruction_file(data_dir, L):
    spec = ObstructionParser(str(data_dir / "m036_signed.obstruction")).parse()
    assert spec.kind == "signs"
    assert spec.label == "m036_signed"
    assert resolve_obstruction(spec, L).ptolemy_signs[1] == (1, 1, -1)


def test_obstruction_file_missing_key():
    with pytest.raises(ParseError):
        ObstructionParser.parse_text("obstruction: signs\nptolemy: [(1, 1, 1)]\n")
    with pytest.raises(ParseError):
        ObstructionParser.parse_text("obstruction: mystery\n")


# Cociclos

def test_trivial_cocycle_gives_trivial_signs(L):
    data = cocycle_to_equation_signs(ShortEdgeCocycle.trivial(), L)
    assert data.mode == ObstructionMode.TRIVIAL
    assert matches_equation_signs(data, trivial_obstruction(L))


def test_single_negative_short_edge_is_invalid(L):
    with pytest.raises(InvalidCocycle):
        validate_cocycle(ShortEdgeCocycle.from_negative([(0, 0)]), L)


def test_unknown_short_edge_is_invalid(L):
    with pytest.raises(InvalidCocycle):
        validate_cocycle(ShortEdgeCocycle.from_negative([(99, 0)]), L)


def test_short_edge_classes_m036(L):
    classes = short_edge_classes(L)
    assert len(classes) == 3 * L.num_face_vars
    members, basis = cocycle_space(L)
    assert len(members) == 24
    assert len(basis) == 9


def test_torus_cocycles_are_all_consistent(torus_phi):
    L = build_layered(torus_phi)
    members, _ = cocycle_space(L)
    assert len(members) == 6
    cocycles = enumerate_cocycles(L)
    assert len(cocycles) == 8
    for sigma in cocycles:
        data = cocycle_to_equation_signs(sigma, L)
        assert validate_obstruction(data, L)
        assert data.ptolemy_signs[0][1] == 1


def test_cocycle_spec_resolves(L):
    members, basis = cocycle_space(L)
    negative = [key for cls_, keys in enumerate(members) if basis[0] >> cls_ & 1 for key in keys]
    spec = ObstructionSpec(kind="cocycle", label="base0", values={"negative": negative})
    data = resolve_obstruction(spec, L)
    assert data.label == "base0"
    assert validate_obstruction(data, L)


def test_find_matching_cocycle_on_torus(torus_phi):
    L = build_layered(torus_phi)
    for sigma in enumerate_cocycles(L):
        target = cocycle_to_equation_signs(sigma, L)
        found = find_matching_cocycle(L, target)
        assert found is not None
        assert matches_equation_signs(cocycle_to_equation_signs(found, L), target)


def test_trivial_signs_match_trivial_cocycle(L, trivial_data):
    assert find_matching_cocycle(L, trivial_data) == ShortEdgeCocycle.trivial()


def test_signed_signs_match_a_cocycle(L, signed_data):
    sigma = find_matching_cocycle(L, signed_data)
    assert sigma is not None
    assert sigma.negative
    data = cocycle_to_equation_signs(sigma, L)
    assert matches_equation_signs(data, signed_data)
    assert all(s == 1 for s in data.side_signs)
    assert all(s == 1 for pair in data.bottom_side_signs for s in pair)
    assert all(s == 1 for s in data.closure_face_signs)


def test_matching_compares_sides_and_closure(L, trivial_data):
    data = cocycle_to_equation_signs(ShortEdgeCocycle.trivial(), L)
    closure = (-1,) + tuple(data.closure_face_signs[1:])
    assert not matches_equation_signs(data, replace(trivial_data, closure_face_signs=closure))
    bottoms = ((-1, 1),) + tuple(data.bottom_side_signs[1:])
    assert not matches_equation_signs(data, replace(trivial_data, bottom_side_signs=bottoms))


def test_two_layer_torus_bundle(two_layer_torus_phi):
    L = build_layered(two_layer_torus_phi)
    assert L.n == 1
    assert L.num_layers == 2
    assert L.num_punctures == 1
    assert L.closure.edge_map == ((3, -1), (0, -1), (4, 1))
    assert sorted(f for f, _ in L.closure.face_map) == [4, 5]


def test_two_layer_torus_cocycles_exhaustive(two_layer_torus_phi):
    L = build_layered(two_layer_torus_phi)
    members, basis = cocycle_space(L)
    assert len(members) == 12
    assert len(basis) == 5
    enumerated = set(enumerate_cocycles(L))
    assert len(enumerated) == 32

    accepted = set()
    for mask in range(1 << len(members)):
        negative = [key for cls_, keys in enumerate(members) if mask >> cls_ & 1 for key in keys]
        sigma = ShortEdgeCocycle.from_negative(negative)
        try:
            validate_cocycle(sigma, L)
        except InvalidCocycle:
            continue
        accepted.add(sigma)
        assert validate_obstruction(cocycle_to_equation_signs(sigma, L), L)
    assert accepted == enumerated
