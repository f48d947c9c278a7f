"""
Triangulación en capas del toro de aplicación de una monodromía

Cada flip agrega un tetraedro: una arista nueva (la diagonal de arriba) y
dos caras nuevas. La identificación final entre la superficie de arriba y la
de abajo se guarda con signos en ClosureMap.

Convenciones de variables (índices desde 0):
  - aristas c_0 .. c_{3n-1} iniciales; la capa i (desde 1) crea c_{3n+i-1}
  - caras θ_0 .. θ_{2n-1} iniciales (orden de la triangulación canónica de
    partida); la capa i crea θ_{2n+2i-2} (cara (e, b, c)) y θ_{2n+2i-1}
    (cara (~e, d, a))
  - ecuación de Ptolemy: c_T c_B - v(a) v(c) + v(b) v(d), con v(x) = ±c_x
    según la orientación de x en el cuadrilátero
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.core.exceptions import BundleError, ClosureMismatch, ParseError
from src.core.models import ObstructionMode
from src.infrastructure.services.surface import (
    MappingClass,
    OrientedEdge,
    SurfaceTriangulation,
    Triangle,
    apply_flip,
    apply_isometry,
    canonical_triangle,
    rotate,
)

SignTriple = Tuple[int, int, int]


@dataclass(frozen=True)
class TetrahedronLayer:
    """Datos de la capa i: variables de aristas y caras del tetraedro del flip.

    `equatorial` = (E1, E2, E3, E4) = (a, c, b, d) y `equatorial_signs` guarda
    -1 cuando el lado está recorrido al revés.
    """

    index: int
    edge: int
    top: int
    bottom: int
    equatorial: Tuple[int, int, int, int]
    equatorial_signs: Tuple[int, int, int, int]
    top_faces: Tuple[int, int]
    bottom_faces: Tuple[int, int]
    alpha_positions: Tuple[int, int, int]
    beta_positions: Tuple[int, int, int]

    def signed_equatorial(self) -> Dict[str, Tuple[int, int]]:
        """(variable, signo) de cada lado del cuadrilátero por nombre"""
        a, c, b, d = self.equatorial
        sa, sc, sb, sd = self.equatorial_signs
        return {"a": (a, sa), "b": (b, sb), "c": (c, sc), "d": (d, sd)}


@dataclass(frozen=True)
class ClosureMap:
    """Identificación de la superficie de arriba con la de abajo.

    edge_map[i] = (variable, signo) con c'_i = signo * c_variable;
    face_map[j] = (cara, signo) y face_rotations[j] = r tal que el lado p de
    la cara inicial j se pega al lado (p + r) % 3 de la cara destino.
    """

    edge_map: Tuple[Tuple[int, int], ...]
    face_map: Tuple[Tuple[int, int], ...]
    face_rotations: Tuple[int, ...]


@dataclass(frozen=True)
class LayeredTriangulation:
    mapping_class: MappingClass
    base: SurfaceTriangulation
    final: SurfaceTriangulation
    layers: Tuple[TetrahedronLayer, ...]
    closure: ClosureMap
    face_triangles: Tuple[Triangle, ...]
    edge_endpoints: Tuple[Tuple[int, int], ...]
    num_punctures: int
    puncture_permutation: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    @property
    def num_edge_vars(self) -> int:
        return 3 * self.n + self.num_layers

    @property
    def num_face_vars(self) -> int:
        return 2 * self.n + 2 * self.num_layers

    @property
    def genus(self) -> int:
        return self.base.genus

    @property
    def boundary_components(self) -> int:
        """Número de cúspides de M: ciclos de la permutación de pinchazos"""
        seen, cycles = set(), 0
        for start in range(len(self.puncture_permutation)):
            if start in seen:
                continue
            cycles += 1
            p = start
            while p not in seen:
                seen.add(p)
                p = self.puncture_permutation[p]
        return cycles


def _head(endpoints: Sequence[Tuple[int, int]], var: int, reversed_: bool) -> int:
    tail, head = endpoints[var]
    return tail if reversed_ else head


def build_layered(phi: MappingClass) -> LayeredTriangulation:
    """Construye las capas a partir de la triangulación de partida y los flips"""
    if not phi.flips:
        raise ClosureMismatch("Se necesita al menos un flip para obtener tetraedros")

    base = phi.initial_triangulation()
    n = base.n
    edge_var = list(range(3 * n))
    slot_face = list(range(2 * n))
    face_triangles: List[Triangle] = list(base.triangles)
    base_endpoints = base.edge_endpoints()
    endpoints: List[Tuple[int, int]] = [base_endpoints[i] for i in range(3 * n)]

    current = base
    layers: List[TetrahedronLayer] = []
    for i, edge in enumerate(phi.flips, start=1):
        quad = current.flip_quad(edge)
        top = 3 * n + i - 1
        f0 = 2 * n + 2 * (i - 1)
        sides = (quad.a, quad.c, quad.b, quad.d)
        layer = TetrahedronLayer(
            index=i,
            edge=edge,
            top=top,
            bottom=edge_var[edge],
            equatorial=tuple(edge_var[x.index] for x in sides),
            equatorial_signs=tuple(x.sign for x in sides),
            top_faces=(f0, f0 + 1),
            bottom_faces=(slot_face[quad.slot_a], slot_face[quad.slot_b]),
            alpha_positions=quad.positions_a,
            beta_positions=quad.positions_b,
        )
        layers.append(layer)

        # la diagonal nueva va del final de c al final de a
        new_tail = _head(endpoints, edge_var[quad.c.index], quad.c.reversed)
        new_head = _head(endpoints, edge_var[quad.a.index], quad.a.reversed)
        endpoints.append((new_tail, new_head))

        current = apply_flip(current, edge)
        slot_face[quad.slot_a] = f0
        slot_face[quad.slot_b] = f0 + 1
        face_triangles.append(current.triangles[quad.slot_a])
        face_triangles.append(current.triangles[quad.slot_b])
        edge_var[edge] = top
        logger.debug(
            f"Capa {i}: flip de {edge}, T={top} B={layer.bottom} E={layer.equatorial} "
            f"caras nuevas={layer.top_faces} caras de abajo={layer.bottom_faces}"
        )

    closure = _closure_map(phi, base, current, edge_var, slot_face)
    permutation = _puncture_permutation(phi, base, base_endpoints, endpoints, edge_var)
    logger.info(
        f"Triangulación en capas: n={n}, {len(layers)} tetraedros, "
        f"{base.num_punctures} pinchazo(s)"
    )
    return LayeredTriangulation(
        mapping_class=phi,
        base=base,
        final=current,
        layers=tuple(layers),
        closure=closure,
        face_triangles=tuple(face_triangles),
        edge_endpoints=tuple(endpoints),
        num_punctures=base.num_punctures,
        puncture_permutation=permutation,
    )


def _closure_map(
    phi: MappingClass,
    base: SurfaceTriangulation,
    final: SurfaceTriangulation,
    edge_var: List[int],
    slot_face: List[int],
) -> ClosureMap:
    image = apply_isometry(base, phi.isometry)
    if not image.same_as(final):
        raise ClosureMismatch(
            f"La triangulación final {final.canonical()} no coincide con la imagen "
            f"de la inicial {image.canonical()}"
        )

    edge_map = tuple(
        (edge_var[target.index], target.sign) for target in phi.isometry
    )

    slots = {tuple(x.label for x in canonical_triangle(t)): k for k, t in enumerate(final.triangles)}
    face_map, rotations = [], []
    for mapped in image.triangles:
        k = slots[tuple(x.label for x in canonical_triangle(mapped))]
        target = final.triangles[k]
        r = target.index(mapped[0])
        if rotate(target, r) != mapped:
            raise ClosureMismatch(f"La cara {mapped} no se identifica con {target}")
        face_map.append((slot_face[k], 1))
        rotations.append(r)
    return ClosureMap(edge_map=edge_map, face_map=tuple(face_map), face_rotations=tuple(rotations))


def _puncture_permutation(
    phi: MappingClass,
    base: SurfaceTriangulation,
    base_endpoints: Dict[int, Tuple[int, int]],
    endpoints: List[Tuple[int, int]],
    edge_var: List[int],
) -> Tuple[int, ...]:
    mapping: Dict[int, int] = {}
    for i, target in enumerate(phi.isometry):
        tail, head = endpoints[edge_var[target.index]]
        if target.reversed:
            tail, head = head, tail
        for source, image in zip(base_endpoints[i], (tail, head)):
            if mapping.setdefault(source, image) != image:
                raise ClosureMismatch(f"El pinchazo {source} se identifica con dos pinchazos distintos")
    permutation = tuple(mapping[p] for p in range(base.num_punctures))
    if sorted(permutation) != list(range(base.num_punctures)):
        raise ClosureMismatch("La monodromía no permuta los pinchazos")
    return permutation


def edge_puncture_degrees(L: LayeredTriangulation, puncture: int = 0) -> Tuple[int, ...]:
    """Cuántos extremos de cada arista (todas las variables) están en `puncture`"""
    return tuple((tail == puncture) + (head == puncture) for tail, head in L.edge_endpoints)


# Datos de obstrucción

@dataclass(frozen=True)
class ObstructionData:
    """Signos de obstrucción a nivel de ecuaciones.

    ptolemy_signs[i] multiplica (c_T c_B, v(a)v(c), v(b)v(d)) en la capa i;
    face_signs[i] = (signos de la ecuación de θ(e,b,c), signos de la de
    θ(~e,d,a)), cada uno sobre los términos (arriba, α, β); side_signs[f] es
    el signo entre los dos lados de la cara f; bottom_side_signs[i] son los
    signos con que la capa i lee θ_α y θ_β; closure_face_signs[j] multiplica
    θ'_j.
    """

    mode: ObstructionMode
    ptolemy_signs: Tuple[SignTriple, ...]
    face_signs: Tuple[Tuple[SignTriple, SignTriple], ...]
    side_signs: Tuple[int, ...]
    bottom_side_signs: Tuple[Tuple[int, int], ...]
    closure_face_signs: Tuple[int, ...]
    label: str = "trivial"

    def all_signs(self) -> List[int]:
        signs: List[int] = []
        for triple in self.ptolemy_signs:
            signs.extend(triple)
        for pair in self.face_signs:
            for triple in pair:
                signs.extend(triple)
        signs.extend(self.side_signs)
        for pair in self.bottom_side_signs:
            signs.extend(pair)
        signs.extend(self.closure_face_signs)
        return signs

    def summary(self) -> str:
        negatives = sum(1 for s in self.all_signs() if s == -1)
        return f"{self.label} ({self.mode.value}, {negatives} signos negativos)"


def trivial_obstruction(L: LayeredTriangulation) -> ObstructionData:
    return make_obstruction(
        L,
        ptolemy=[(1, 1, 1)] * L.num_layers,
        faces=[((1, 1, 1), (1, 1, 1))] * L.num_layers,
        label="trivial",
    )


def make_obstruction(
    L: LayeredTriangulation,
    ptolemy: Sequence[Sequence[int]],
    faces: Sequence[Sequence[Sequence[int]]],
    sides: Optional[Sequence[int]] = None,
    bottoms: Optional[Sequence[Sequence[int]]] = None,
    closure: Optional[Sequence[int]] = None,
    label: str = "signs",
) -> ObstructionData:
    """Arma ObstructionData; los signos de lados omitidos valen +1"""
    sides = tuple(sides) if sides is not None else (1,) * L.num_face_vars
    bottoms = (
        tuple(tuple(p) for p in bottoms) if bottoms is not None else ((1, 1),) * L.num_layers
    )
    closure = tuple(closure) if closure is not None else (1,) * (2 * L.n)
    ptolemy_t = tuple(tuple(t) for t in ptolemy)
    faces_t = tuple(tuple(tuple(t) for t in pair) for pair in faces)
    data = ObstructionData(
        mode=ObstructionMode.TRIVIAL,
        ptolemy_signs=ptolemy_t,
        face_signs=faces_t,
        side_signs=sides,
        bottom_side_signs=bottoms,
        closure_face_signs=closure,
        label=label,
    )
    if any(s != 1 for s in data.all_signs()):
        data = ObstructionData(
            mode=ObstructionMode.EQUATION_SIGNS,
            ptolemy_signs=ptolemy_t,
            face_signs=faces_t,
            side_signs=sides,
            bottom_side_signs=bottoms,
            closure_face_signs=closure,
            label=label,
        )
    return data


def _expected_side(data: ObstructionData, L: LayeredTriangulation, face: int) -> int:
    return data.side_signs[face] if face >= 2 * L.n else 1


def validate_obstruction(data: ObstructionData, L: LayeredTriangulation) -> bool:
    """Coherencia interna: longitudes, valores ±1 y signos de caras compartidas"""
    N = L.num_layers

    def fail(reason: str) -> bool:
        logger.debug(f"Obstrucción '{data.label}' inconsistente: {reason}")
        return False

    if len(data.ptolemy_signs) != N or any(len(t) != 3 for t in data.ptolemy_signs):
        return fail("signos de Ptolemy con forma incorrecta")
    if len(data.face_signs) != N or any(
        len(pair) != 2 or any(len(t) != 3 for t in pair) for pair in data.face_signs
    ):
        return fail("signos de caras con forma incorrecta")
    if len(data.side_signs) != L.num_face_vars:
        return fail("signos de lados con longitud incorrecta")
    if len(data.bottom_side_signs) != N or any(len(p) != 2 for p in data.bottom_side_signs):
        return fail("signos de caras de abajo con forma incorrecta")
    if len(data.closure_face_signs) != 2 * L.n:
        return fail("signos de cierre con longitud incorrecta")
    if any(s not in (1, -1) for s in data.all_signs()):
        return fail("hay valores distintos de ±1")
    if data.mode == ObstructionMode.TRIVIAL and any(s != 1 for s in data.all_signs()):
        return fail("modo trivial con signos negativos")

    for layer, bottoms in zip(L.layers, data.bottom_side_signs):
        for face, sign in zip(layer.bottom_faces, bottoms):
            if sign != _expected_side(data, L, face):
                return fail(f"la capa {layer.index} lee la cara {face} con otro signo")
    for j, ((target, _), sign) in enumerate(zip(L.closure.face_map, data.closure_face_signs)):
        if sign != _expected_side(data, L, target):
            return fail(f"el cierre de la cara {j} no coincide con la cara {target}")
    return True


def require_valid_obstruction(data: ObstructionData, L: LayeredTriangulation) -> ObstructionData:
    if not validate_obstruction(data, L):
        raise BundleError(
            f"Los datos de obstrucción '{data.label}' no son consistentes con la triangulación",
            invariant="obstruction_consistency",
        )
    return data


# Ecuaciones

@dataclass(frozen=True)
class PtolemyEquation:
    """Σ signo * c_u * c_v = 0; el primer término es (signo, T, B)"""

    layer: int
    terms: Tuple[Tuple[int, int, int], ...]

    @property
    def top(self) -> int:
        return self.terms[0][1]

    @property
    def bottom(self) -> int:
        return self.terms[0][2]

    def text(self) -> str:
        pieces = []
        for k, (sign, u, v) in enumerate(self.terms):
            if k > 0:
                u, v = sorted((u, v))
            pieces.append((sign, f"c{u}*c{v}"))
        return _join_signed(pieces)


@dataclass(frozen=True)
class FaceEquation:
    """Σ signo * c_u * θ_f = 0; el primer término es (signo, T, cara nueva)"""

    layer: int
    terms: Tuple[Tuple[int, int, int], ...]

    @property
    def unknown(self) -> int:
        return self.terms[0][2]

    def text(self) -> str:
        return _join_signed([(sign, f"c{u}*θ{f}") for sign, u, f in self.terms])


def _join_signed(pieces: Sequence[Tuple[int, str]]) -> str:
    sign, body = pieces[0]
    text = body if sign > 0 else f"-{body}"
    for sign, body in pieces[1:]:
        text += f" + {body}" if sign > 0 else f" - {body}"
    return text


def ptolemy_equations(L: LayeredTriangulation, obstruction: ObstructionData) -> List[PtolemyEquation]:
    equations = []
    for layer, (s_tb, s_ac, s_bd) in zip(L.layers, obstruction.ptolemy_signs):
        q = layer.signed_equatorial()
        (a, sa), (b, sb), (c, sc), (d, sd) = q["a"], q["b"], q["c"], q["d"]
        terms = (
            (s_tb, layer.top, layer.bottom),
            (-s_ac * sa * sc, a, c),
            (s_bd * sb * sd, b, d),
        )
        equations.append(PtolemyEquation(layer.index, terms))
    return equations


def face_equations(L: LayeredTriangulation, obstruction: ObstructionData) -> List[FaceEquation]:
    """Dos ecuaciones por capa: la de θ(e,b,c) y la de θ(~e,d,a)"""
    equations = []
    for layer, (first, second), (p_alpha, p_beta) in zip(
        L.layers, obstruction.face_signs, obstruction.bottom_side_signs
    ):
        q = layer.signed_equatorial()
        (a, sa), (b, sb), (c, sc), (d, sd) = q["a"], q["b"], q["c"], q["d"]
        alpha, beta = layer.bottom_faces
        f0, f2 = layer.top_faces
        equations.append(FaceEquation(layer.index, (
            (-first[0], layer.top, f0),
            (first[1] * sa * p_alpha, a, alpha),
            (first[2] * sd * p_beta, d, beta),
        )))
        equations.append(FaceEquation(layer.index, (
            (second[0], layer.top, f2),
            (second[1] * sb * p_alpha, b, alpha),
            (second[2] * sc * p_beta, c, beta),
        )))
    return equations


# Volcado de texto

def _signed_var(var: int, sign: int) -> str:
    return f"~{var}" if sign < 0 else str(var)


def format_layered_dump(L: LayeredTriangulation, obstruction: ObstructionData) -> str:
    lines = []
    for layer, signs in zip(L.layers, obstruction.ptolemy_signs):
        equatorial = ",".join(_signed_var(v, s) for v, s in zip(layer.equatorial, layer.equatorial_signs))
        lines.append(
            f"layer {layer.index}: T={layer.top} B={layer.bottom} E=({equatorial}) "
            f"faces=({layer.top_faces[0]},{layer.top_faces[1]}) "
            f"bottom=({layer.bottom_faces[0]},{layer.bottom_faces[1]}) "
            f"signs=({','.join(str(s) for s in signs)})"
        )
    edges = ", ".join(_signed_var(v, s) for v, s in L.closure.edge_map)
    faces = ", ".join(
        _signed_var(f, s * sign)
        for (f, s), sign in zip(L.closure.face_map, obstruction.closure_face_signs)
    )
    lines.append(f"closure edges: [{edges}]")
    lines.append(f"closure faces: [{faces}]")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LayerRecord:
    index: int
    top: int
    bottom: int
    equatorial: Tuple[Tuple[int, int], ...]
    top_faces: Tuple[int, int]
    bottom_faces: Tuple[int, int]
    signs: SignTriple


@dataclass(frozen=True)
class LayeredDump:
    layers: Tuple[LayerRecord, ...]
    closure_edges: Tuple[Tuple[int, int], ...]
    closure_faces: Tuple[Tuple[int, int], ...]


def dump_record(L: LayeredTriangulation, obstruction: ObstructionData) -> LayeredDump:
    """Contenido del volcado como datos, para comparar con parse_layered_dump"""
    layers = tuple(
        LayerRecord(
            index=layer.index,
            top=layer.top,
            bottom=layer.bottom,
            equatorial=tuple(zip(layer.equatorial, layer.equatorial_signs)),
            top_faces=layer.top_faces,
            bottom_faces=layer.bottom_faces,
            signs=tuple(signs),
        )
        for layer, signs in zip(L.layers, obstruction.ptolemy_signs)
    )
    faces = tuple(
        (f, s * sign) for (f, s), sign in zip(L.closure.face_map, obstruction.closure_face_signs)
    )
    return LayeredDump(layers, L.closure.edge_map, faces)


_LAYER_RE = re.compile(
    r"^layer\s+(\d+):\s*T=(\d+)\s+B=(\d+)\s+E=\(([^)]*)\)\s+faces=\((\d+),\s*(\d+)\)\s+"
    r"bottom=\((\d+),\s*(\d+)\)\s+signs=\(([^)]*)\)\s*$"
)
_CLOSURE_RE = re.compile(r"^closure\s+(edges|faces):\s*\[([^\]]*)\]\s*$")


def _parse_signed_vars(text: str) -> Tuple[Tuple[int, int], ...]:
    items = [tok.strip() for tok in text.split(",") if tok.strip()]
    try:
        return tuple((int(tok[1:]), -1) if tok.startswith("~") else (int(tok), 1) for tok in items)
    except ValueError:
        raise ParseError(f"Lista de variables inválida: '{text}'")


def parse_layered_dump(text: str) -> LayeredDump:
    layers: List[LayerRecord] = []
    closure: Dict[str, Tuple[Tuple[int, int], ...]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        match = _LAYER_RE.match(line)
        if match:
            g = match.groups()
            signs = tuple(int(s) for s in g[8].split(","))
            if len(signs) != 3:
                raise ParseError(f"Se esperaban tres signos en '{line}'")
            layers.append(LayerRecord(
                index=int(g[0]),
                top=int(g[1]),
                bottom=int(g[2]),
                equatorial=_parse_signed_vars(g[3]),
                top_faces=(int(g[4]), int(g[5])),
                bottom_faces=(int(g[6]), int(g[7])),
                signs=signs,
            ))
            continue
        match = _CLOSURE_RE.match(line)
        if match:
            closure[match.group(1)] = _parse_signed_vars(match.group(2))
            continue
        raise ParseError(f"Línea no reconocida en el volcado: '{line}'")
    if "edges" not in closure or "faces" not in closure:
        raise ParseError("El volcado no contiene las líneas de cierre")
    return LayeredDump(tuple(layers), closure["edges"], closure["faces"])
