"""
Triangulaciones ideales de superficies con pinchazos, flips 2-2 e isometrías
combinatorias
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from src.core.exceptions import InvalidIsometry, InvalidTriangulation, NotFlippable


@dataclass(frozen=True)
class OrientedEdge:
    """Arista `index` recorrida en su sentido (`reversed=False`) o al revés (`~index`)"""

    index: int
    reversed: bool = False

    @classmethod
    def from_label(cls, label: int) -> "OrientedEdge":
        """Etiqueta entera al estilo de ~e == -e - 1"""
        return cls(~label, True) if label < 0 else cls(label, False)

    @property
    def label(self) -> int:
        return ~self.index if self.reversed else self.index

    @property
    def sign(self) -> int:
        return -1 if self.reversed else 1

    def __invert__(self) -> "OrientedEdge":
        return OrientedEdge(self.index, not self.reversed)

    def __str__(self) -> str:
        return f"~{self.index}" if self.reversed else str(self.index)


Triangle = Tuple[OrientedEdge, OrientedEdge, OrientedEdge]
Isometry = Tuple[OrientedEdge, ...]
Corner = Tuple[int, int]


def rotate(triangle: Triangle, k: int) -> Triangle:
    k %= 3
    return triangle[k:] + triangle[:k]


def triangle_key(triangle: Triangle) -> Tuple[int, int, int]:
    return tuple(x.label for x in triangle)


def canonical_triangle(triangle: Triangle) -> Triangle:
    """Rota el triángulo para que empiece por la etiqueta mínima"""
    labels = triangle_key(triangle)
    return rotate(triangle, labels.index(min(labels)))


def format_triangle(triangle: Triangle) -> str:
    return "(" + ", ".join(str(x) for x in triangle) + ")"


class UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def classes(self) -> Dict:
        """Asigna a cada elemento el número de su clase, en orden de aparición"""
        numbering: Dict = {}
        result = {}
        for x in self.parent:
            root = self.find(x)
            if root not in numbering:
                numbering[root] = len(numbering)
            result[x] = numbering[root]
        return result


@dataclass(frozen=True)
class FlipQuad:
    """Cuadrilátero de un flip: triángulos (a, b, e) y (c, d, ~e).

    Las posiciones indican dónde aparece cada lado en el triángulo guardado
    en su ranura, antes del flip.
    """

    edge: int
    slot_a: int
    slot_b: int
    a: OrientedEdge
    b: OrientedEdge
    c: OrientedEdge
    d: OrientedEdge
    positions_a: Tuple[int, int, int]  # a, b, e
    positions_b: Tuple[int, int, int]  # c, d, ~e


@dataclass(frozen=True)
class SurfaceTriangulation:
    """2n triángulos orientados (antihorario) sobre 3n aristas"""

    triangles: Tuple[Triangle, ...]

    def __post_init__(self):
        triangles = tuple(tuple(t) for t in self.triangles)
        object.__setattr__(self, "triangles", triangles)
        if not triangles:
            raise InvalidTriangulation("La triangulación no tiene triángulos")
        if any(len(t) != 3 for t in triangles):
            raise InvalidTriangulation("Cada triángulo debe tener exactamente tres lados")

        uses: Dict[int, List[OrientedEdge]] = {}
        for triangle in triangles:
            for side in triangle:
                uses.setdefault(side.index, []).append(side)
        num_edges = len(uses)
        if sorted(uses) != list(range(num_edges)):
            missing = sorted(set(range(max(uses) + 1)) - set(uses))
            raise InvalidTriangulation(f"Índices de arista no consecutivos; faltan {missing}")
        for index, sides in sorted(uses.items()):
            if len(sides) != 2:
                raise InvalidTriangulation(f"La arista {index} aparece {len(sides)} veces (se esperaban 2)")
            if sides[0].reversed == sides[1].reversed:
                raise InvalidTriangulation(
                    f"La arista {index} aparece dos veces con la misma orientación"
                )
        if 2 * num_edges != 3 * len(triangles):
            raise InvalidTriangulation(
                f"{len(triangles)} triángulos no son compatibles con {num_edges} aristas"
            )

    # Construcción

    @classmethod
    def from_labels(cls, triangles: Sequence[Sequence[int]]) -> "SurfaceTriangulation":
        return cls(tuple(tuple(OrientedEdge.from_label(x) for x in t) for t in triangles))

    # Combinatoria

    @property
    def num_edges(self) -> int:
        return 3 * len(self.triangles) // 2

    @property
    def n(self) -> int:
        """-χ de la superficie con pinchazos"""
        return len(self.triangles) // 2

    def locate(self, edge: OrientedEdge) -> Tuple[int, int]:
        """(ranura, posición) del lado orientado `edge`"""
        for slot, triangle in enumerate(self.triangles):
            for position, side in enumerate(triangle):
                if side == edge:
                    return slot, position
        raise KeyError(str(edge))

    def _corner_union(self) -> UnionFind:
        corners = [(slot, k) for slot in range(len(self.triangles)) for k in range(3)]
        uf = UnionFind(corners)
        for slot, triangle in enumerate(self.triangles):
            for k, side in enumerate(triangle):
                # el origen de `side` es el final de ~side
                other_slot, m = self.locate(~side)
                uf.union((slot, k), (other_slot, (m + 1) % 3))
        return uf

    def puncture_classes(self) -> Dict[Corner, int]:
        """Pinchazo de cada esquina (ranura, k); la esquina k es el origen del lado k"""
        return self._corner_union().classes()

    @property
    def num_punctures(self) -> int:
        return len(set(self.puncture_classes().values()))

    @property
    def genus(self) -> int:
        return (2 - self.num_punctures + self.n) // 2

    def edge_endpoints(self) -> Dict[int, Tuple[int, int]]:
        """(pinchazo de origen, pinchazo de llegada) de cada arista en su sentido positivo"""
        classes = self.puncture_classes()
        endpoints: Dict[int, Tuple[int, int]] = {}
        for slot, triangle in enumerate(self.triangles):
            for k, side in enumerate(triangle):
                if not side.reversed:
                    endpoints[side.index] = (classes[(slot, k)], classes[(slot, (k + 1) % 3)])
        return endpoints

    def is_flippable(self, edge: int) -> bool:
        if not 0 <= edge < self.num_edges:
            return False
        return self.locate(OrientedEdge(edge))[0] != self.locate(OrientedEdge(edge, True))[0]

    def flip_quad(self, edge: int) -> FlipQuad:
        if not 0 <= edge < self.num_edges:
            raise NotFlippable(f"La arista {edge} no existe (hay {self.num_edges})")
        slot_a, pos_a = self.locate(OrientedEdge(edge))
        slot_b, pos_b = self.locate(OrientedEdge(edge, True))
        if slot_a == slot_b:
            raise NotFlippable(f"La arista {edge} bordea dos veces el mismo triángulo")
        a, b, _ = rotate(self.triangles[slot_a], pos_a + 1)
        c, d, _ = rotate(self.triangles[slot_b], pos_b + 1)
        return FlipQuad(
            edge=edge,
            slot_a=slot_a,
            slot_b=slot_b,
            a=a,
            b=b,
            c=c,
            d=d,
            positions_a=((pos_a + 1) % 3, (pos_a + 2) % 3, pos_a),
            positions_b=((pos_b + 1) % 3, (pos_b + 2) % 3, pos_b),
        )

    # Formas canónicas y texto

    def canonical(self) -> "SurfaceTriangulation":
        triangles = sorted((canonical_triangle(t) for t in self.triangles), key=triangle_key)
        return SurfaceTriangulation(tuple(triangles))

    def same_as(self, other: "SurfaceTriangulation") -> bool:
        """Igualdad como conjunto de triángulos salvo rotación cíclica"""
        return self.canonical().triangles == other.canonical().triangles

    def to_text(self) -> str:
        return "[" + ",".join(format_triangle(t) for t in self.triangles) + "]"

    def __str__(self) -> str:
        return self.to_text()


def apply_flip(T: SurfaceTriangulation, edge: int) -> SurfaceTriangulation:
    """Flip 2-2: (a, b, e), (c, d, ~e) pasan a (e, b, c), (~e, d, a) en las mismas ranuras"""
    quad = T.flip_quad(edge)
    e = OrientedEdge(edge)
    triangles = list(T.triangles)
    triangles[quad.slot_a] = (e, quad.b, quad.c)
    triangles[quad.slot_b] = (~e, quad.d, quad.a)
    return SurfaceTriangulation(tuple(triangles))


def _check_isometry(iso: Isometry, num_edges: int) -> None:
    if len(iso) != num_edges:
        raise InvalidIsometry(
            f"La isometría tiene {len(iso)} entradas para {num_edges} aristas"
        )
    if sorted(x.index for x in iso) != list(range(num_edges)):
        raise InvalidIsometry("La isometría no es una biyección de las aristas")


def map_edge(iso: Isometry, edge: OrientedEdge) -> OrientedEdge:
    image = iso[edge.index]
    return ~image if edge.reversed else image


def apply_isometry(T: SurfaceTriangulation, iso: Isometry) -> SurfaceTriangulation:
    """Reetiqueta cada lado x por iso(x), conservando el orden de las ranuras"""
    _check_isometry(iso, T.num_edges)
    return SurfaceTriangulation(
        tuple(tuple(map_edge(iso, side) for side in t) for t in T.triangles)
    )


def invert_isometry(iso: Isometry) -> Isometry:
    _check_isometry(iso, len(iso))
    inverse: List[OrientedEdge] = [OrientedEdge(0)] * len(iso)
    for i, image in enumerate(iso):
        inverse[image.index] = OrientedEdge(i, image.reversed)
    return tuple(inverse)


def identity_isometry(num_edges: int) -> Isometry:
    return tuple(OrientedEdge(i) for i in range(num_edges))


def format_isometry(iso: Isometry) -> str:
    return "[" + ", ".join(str(x) for x in iso) + "]"


@dataclass(frozen=True)
class MappingClass:
    """Monodromía dada por una triangulación fuente S, una isometría y una lista de flips.

    La triangulación de partida es iso^-1(S) en forma canónica; aplicar los
    flips en orden debe devolver S.
    """

    source: SurfaceTriangulation
    isometry: Isometry
    flips: Tuple[int, ...]

    def __post_init__(self):
        _check_isometry(self.isometry, self.source.num_edges)

    def initial_triangulation(self) -> SurfaceTriangulation:
        return apply_isometry(self.source, invert_isometry(self.isometry)).canonical()

    def triangulations(self) -> List[SurfaceTriangulation]:
        """Triangulación inicial seguida del resultado de cada flip"""
        current = self.initial_triangulation()
        sequence = [current]
        for edge in self.flips:
            current = apply_flip(current, edge)
            sequence.append(current)
        return sequence

    def to_text(self) -> str:
        return (
            f"triangulation: {self.source.to_text()}\n"
            f"isometry: {format_isometry(self.isometry)}\n"
            f"flips: [{', '.join(str(e) for e in self.flips)}]\n"
        )
