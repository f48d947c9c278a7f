"""
Cociclos de signos en las aristas cortas y su traducción a signos de
ecuaciones

Una arista corta se nombra (cara, p): la esquina de la cara opuesta a su
lado p. Las caras que el cierre identifica comparten aristas cortas.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from loguru import logger

from src.core.exceptions import InvalidCocycle, ParseError
from src.infrastructure.services.bundle import (
    LayeredTriangulation,
    ObstructionData,
    TetrahedronLayer,
    make_obstruction,
    require_valid_obstruction,
    trivial_obstruction,
)
from src.infrastructure.services.surface import UnionFind
from src.infrastructure.services.surface_parser import ObstructionSpec

ShortEdge = Tuple[int, int]

# triángulos de cúspide: aristas cortas σ^v_{jk} alrededor de cada vértice v
CUSP_TRIANGLES = (
    ("0_12", "0_13", "0_23"),
    ("1_02", "1_03", "1_23"),
    ("2_01", "2_03", "2_13"),
    ("3_01", "3_02", "3_12"),
)


@dataclass(frozen=True)
class ShortEdgeCocycle:
    """Signos ±1 asignados a aristas cortas; las no asignadas valen +1"""

    signs: Tuple[Tuple[ShortEdge, int], ...]

    @classmethod
    def from_mapping(cls, signs: Dict[ShortEdge, int]) -> "ShortEdgeCocycle":
        return cls(tuple(sorted(((int(f), int(p)), int(s)) for (f, p), s in signs.items())))

    @classmethod
    def from_negative(cls, keys: Iterable[ShortEdge]) -> "ShortEdgeCocycle":
        return cls.from_mapping({key: -1 for key in keys})

    @classmethod
    def trivial(cls) -> "ShortEdgeCocycle":
        return cls(())

    @property
    def negative(self) -> FrozenSet[ShortEdge]:
        return frozenset(key for key, s in self.signs if s == -1)


def tetrahedron_short_edges(layer: TetrahedronLayer) -> Dict[str, ShortEdge]:
    """Aristas cortas del tetraedro de la capa con vértices 0,1,2,3 = P,Q,R,S.

    Caras: (e,b,c) opuesta a 0, (~e,d,a) opuesta a 2, α = (a,b,e) opuesta a 3
    y β = (c,d,~e) opuesta a 1.
    """
    f0, f2 = layer.top_faces
    alpha, beta = layer.bottom_faces
    pa, pb, pe = layer.alpha_positions
    pc, pd, pne = layer.beta_positions
    return {
        "1_23": (f0, 2), "2_13": (f0, 0), "3_12": (f0, 1),
        "0_13": (f2, 0), "1_03": (f2, 1), "3_01": (f2, 2),
        "0_12": (alpha, pb), "1_02": (alpha, pe), "2_01": (alpha, pa),
        "0_23": (beta, pc), "2_03": (beta, pd), "3_02": (beta, pne),
    }


def short_edge_classes(L: LayeredTriangulation) -> Dict[ShortEdge, int]:
    """Clase de cada arista corta tras identificar las caras del cierre"""
    keys = [(f, p) for f in range(L.num_face_vars) for p in range(3)]
    uf = UnionFind(keys)
    for j, ((target, _), r) in enumerate(zip(L.closure.face_map, L.closure.face_rotations)):
        for p in range(3):
            uf.union((j, p), (target, (p + r) % 3))
    return uf.classes()


class _CocycleSigns:
    """Signo de cada clase de aristas cortas identificadas"""

    def __init__(self, sigma: ShortEdgeCocycle, L: LayeredTriangulation):
        self.classes = short_edge_classes(L)
        self.class_signs: Dict[int, int] = {}
        owners: Dict[int, ShortEdge] = {}
        for key, sign in sigma.signs:
            if key not in self.classes:
                raise InvalidCocycle(f"La arista corta {key} no existe en la triangulación")
            if sign not in (1, -1):
                raise InvalidCocycle(f"Signo {sign} inválido en la arista corta {key}")
            cls_ = self.classes[key]
            if self.class_signs.setdefault(cls_, sign) != sign:
                raise InvalidCocycle(
                    f"Las aristas cortas identificadas {owners[cls_]} y {key} tienen signos distintos"
                )
            owners.setdefault(cls_, key)

    def sign(self, key: ShortEdge) -> int:
        return self.class_signs.get(self.classes[key], 1)


def validate_cocycle(sigma: ShortEdgeCocycle, L: LayeredTriangulation) -> _CocycleSigns:
    """Comprueba signos compartidos y que cada triángulo de cúspide tenga producto +1"""
    signs = _CocycleSigns(sigma, L)
    for layer in L.layers:
        edges = tetrahedron_short_edges(layer)
        for vertex, triangle in enumerate(CUSP_TRIANGLES):
            value = 1
            for name in triangle:
                value *= signs.sign(edges[name])
            if value != 1:
                raise InvalidCocycle(
                    f"El triángulo de cúspide del vértice {vertex} en la capa {layer.index} "
                    f"tiene producto -1"
                )
    return signs


def cocycle_to_equation_signs(
    sigma: ShortEdgeCocycle, L: LayeredTriangulation, label: str = "cocycle"
) -> ObstructionData:
    """Signos de Ptolemy y de caras inducidos por el cociclo.

    Cada θ vive en el lado de arriba de su cara y las dos capas vecinas leen la
    misma variable: los signos de lados, de caras de abajo y de cierre quedan en +1.
    """
    signs = validate_cocycle(sigma, L)

    ptolemy, faces = [], []
    for layer in L.layers:
        edges = tetrahedron_short_edges(layer)

        def s(name: str) -> int:
            return signs.sign(edges[name])

        s1 = s("2_03") * s("3_12") * s("1_03") * s("0_12")
        s2 = s("3_02") * s("2_13") * s("1_02") * s("0_13")
        ptolemy.append((s1, 1, s2))
        faces.append((
            (1, s("0_12") * s("3_12"), s("3_01") * s("2_01")),
            (1, s("1_23") * s("0_23"), s("1_03") * s("2_03")),
        ))

    data = make_obstruction(L, ptolemy=ptolemy, faces=faces, label=label)
    logger.debug(f"Cociclo convertido: {data.summary()}")
    return data


# Enumeración de cociclos sobre GF(2)

def _nullspace_gf2(rows: List[int], size: int) -> List[int]:
    """Base del núcleo de un sistema sobre GF(2) dado por máscaras de bits"""
    pivots: Dict[int, int] = {}
    for row in rows:
        for col, pivot_row in pivots.items():
            if row >> col & 1:
                row ^= pivot_row
        if not row:
            continue
        col = row.bit_length() - 1
        for other in list(pivots):
            if pivots[other] >> col & 1:
                pivots[other] ^= row
        pivots[col] = row

    basis = []
    for free in range(size):
        if free in pivots:
            continue
        vector = 1 << free
        for col, row in pivots.items():
            if row >> free & 1:
                vector |= 1 << col
        basis.append(vector)
    return basis


def cocycle_space(L: LayeredTriangulation) -> Tuple[List[List[ShortEdge]], List[int]]:
    """Clases de aristas cortas y base del espacio de cociclos (máscaras sobre las clases)"""
    classes = short_edge_classes(L)
    members: Dict[int, List[ShortEdge]] = {}
    for key, cls_ in classes.items():
        members.setdefault(cls_, []).append(key)
    size = len(members)

    rows = []
    for layer in L.layers:
        edges = tetrahedron_short_edges(layer)
        for triangle in CUSP_TRIANGLES:
            mask = 0
            for name in triangle:
                mask ^= 1 << classes[edges[name]]
            rows.append(mask)
    basis = _nullspace_gf2(rows, size)
    return [sorted(members[c]) for c in range(size)], basis


def iter_cocycles(L: LayeredTriangulation) -> Iterator[ShortEdgeCocycle]:
    """Todos los cociclos válidos (2^dim de ellos)"""
    members, basis = cocycle_space(L)
    logger.debug(f"Espacio de cociclos: {len(members)} aristas cortas, dimensión {len(basis)}")
    for choice in product((0, 1), repeat=len(basis)):
        mask = 0
        for bit, vector in zip(choice, basis):
            if bit:
                mask ^= vector
        negative = [key for cls_, keys in enumerate(members) if mask >> cls_ & 1 for key in keys]
        yield ShortEdgeCocycle.from_negative(negative)


def enumerate_cocycles(L: LayeredTriangulation) -> List[ShortEdgeCocycle]:
    return list(iter_cocycles(L))


def _same_up_to_sign(x: Tuple[int, ...], y: Tuple[int, ...]) -> bool:
    return tuple(x) == tuple(y) or tuple(x) == tuple(-v for v in y)


def matches_equation_signs(candidate: ObstructionData, target: ObstructionData) -> bool:
    """Mismas ecuaciones salvo el signo global de cada una; lados y cierre, iguales"""
    if len(candidate.ptolemy_signs) != len(target.ptolemy_signs):
        return False
    if not all(_same_up_to_sign(a, b) for a, b in zip(candidate.ptolemy_signs, target.ptolemy_signs)):
        return False
    for pair_a, pair_b in zip(candidate.face_signs, target.face_signs):
        for a, b in zip(pair_a, pair_b):
            if not _same_up_to_sign(a, b):
                return False
    return (
        candidate.side_signs == target.side_signs
        and candidate.bottom_side_signs == target.bottom_side_signs
        and candidate.closure_face_signs == target.closure_face_signs
    )


def find_matching_cocycle(L: LayeredTriangulation, target: ObstructionData) -> Optional[ShortEdgeCocycle]:
    """Busca un cociclo cuyas ecuaciones con signo coincidan con `target`"""
    for sigma in iter_cocycles(L):
        if matches_equation_signs(cocycle_to_equation_signs(sigma, L), target):
            return sigma
    return None


def resolve_obstruction(spec: ObstructionSpec, L: LayeredTriangulation) -> ObstructionData:
    """Convierte la obstrucción leída de archivo en ObstructionData validada"""
    if spec.kind == "trivial":
        return trivial_obstruction(L)
    if spec.kind == "cocycle":
        try:
            signs = {tuple(key): -1 for key in spec.values["negative"]}
            for key in spec.values.get("positive", []):
                if signs.setdefault(tuple(key), 1) != 1:
                    raise InvalidCocycle(f"La arista corta {tuple(key)} aparece con los dos signos")
            sigma = ShortEdgeCocycle.from_mapping(signs)
        except (TypeError, ValueError) as e:
            raise ParseError(f"Lista de aristas cortas inválida: {e}")
        return cocycle_to_equation_signs(sigma, L, label=spec.label)

    values = spec.values
    data = make_obstruction(
        L,
        ptolemy=values["ptolemy"],
        faces=values["faces"],
        sides=values.get("sides"),
        bottoms=values.get("bottoms"),
        closure=values.get("closure"),
        label=spec.label,
    )
    return require_valid_obstruction(data, L)
