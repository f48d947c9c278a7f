"""
Datos incorporados del fibrado m036: monodromía, soluciones de Ptolemy,
signos de obstrucción y polinomios esperados
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from src.core.algebra import LaurentPolynomial, NumberField, parse_laurent
from src.infrastructure.services.bundle import (
    LayeredTriangulation,
    ObstructionData,
    build_layered,
)
from src.infrastructure.services.obstruction import resolve_obstruction
from src.infrastructure.services.surface import MappingClass
from src.infrastructure.services.surface_parser import (
    MonodromyParser,
    ObstructionParser,
    ObstructionSpec,
    Solution,
    SolutionParser,
    parse_surface,
)

M036_MONODROMY = """\
# m036: fibra de género 2 con un pinchazo
triangulation: [(~8, ~1, ~4),(~7, ~3, 2),(~6, ~2, 1),(~5, 0, 3),(~0, 7, 8),(4, 5, 6)]
isometry: [1, 2, 3, 4, 5, 6, 7, 8, ~0]
flips: [8, 5, 7, 4]
"""

# triangulación de partida y resultado de los tres primeros flips
M036_LISTINGS = (
    "[(~8, 2, ~4),(~7, ~0, ~3),(~6, ~2, 1),(~5, ~1, 0),(3, 4, 5),(6, 7, 8)]",
    "[(~8, ~4, 6),(~7, ~0, ~3),(~6, ~2, 1),(~5, ~1, 0),(2, 8, 7),(3, 4, 5)]",
    "[(~8, ~4, 6),(~7, ~0, ~3),(~6, ~2, 1),(~5, 0, 3),(~1, 5, 4),(2, 8, 7)]",
    "[(~8, ~4, 6),(~7, ~3, 2),(~6, ~2, 1),(~5, 0, 3),(~1, 5, 4),(~0, 7, 8)]",
)

M036_TRIVIAL_SOLUTION = """\
field: K; minpoly: x^2 - 2*x - 1; generator: b
c = [1, 1, 1, 1, b, 1 - b, 1 - b, b - 2, -1]
"""

M036_SIGNED_SOLUTION = """\
field: K; minpoly: x^3 + x^2 + x - 1
c = [1, 1, 1, 1, a, -a - a^2, -a - a^2, -a, -1]
"""

M036_SIGNED_OBSTRUCTION = """\
obstruction: signs
label: m036_signed
ptolemy: [(1, -1, 1), (1, 1, -1), (1, -1, 1), (1, 1, 1)]
faces: [((1, 1, -1), (1, -1, -1)), ((1, 1, 1), (1, -1, 1)), ((1, 1, -1), (1, -1, -1)), ((1, 1, 1), (1, 1, 1))]
"""

TORUS_MONODROMY = """\
# toro con un pinchazo, monodromía de un solo flip
triangulation: [(0, 1, 2),(~0, ~1, ~2)]
isometry: [2, ~1, 0]
flips: [2]
"""

TWO_LAYER_TORUS_MONODROMY = """\
# toro con un pinchazo, dos flips; todas las aristas quedan identificadas con aristas de arriba
triangulation: [(~1, ~0, 2),(1, 0, ~2)]
isometry: [~2, ~0, 1]
flips: [2, 1]
"""

EXPECTED_POLYNOMIALS: Dict[Tuple[str, int], str] = {
    ("trivial", 3): "-1 - 4*t + 2*t^3 - t^4 + t^5 - 2*t^6 + 4*t^8 + t^9",
    ("trivial", 2): "1 - 2*t + t^2 + t^4 - 2*t^5 + t^6",
    ("signed", 3): (
        "-1 - (2*a^2 + 4*a + 2)*t - (4*a^2 + 6*a + 6)*t^2 - (6*a^2 + 4*a + 8)*t^3"
        " + (2*a^2 - 4*a - 3)*t^4 + (-2*a^2 + 4*a + 3)*t^5 + (6*a^2 + 4*a + 8)*t^6"
        " + (4*a^2 + 6*a + 6)*t^7 + (2*a^2 + 4*a + 2)*t^8 + t^9"
    ),
    ("signed", 2): (
        "1 + (2*a^2 + 2*a + 2)*t + (a^2 + 2*a + 4)*t^2 + (2*a^2 + 4*a + 2)*t^3"
        " + (a^2 + 2*a + 4)*t^4 + (2*a^2 + 2*a + 2)*t^5 + t^6"
    ),
}


@dataclass(frozen=True)
class FixtureCase:
    """Un caso de m036: solución, obstrucción y polinomios esperados"""

    name: str
    solution: Solution
    obstruction: ObstructionSpec

    def resolve(self, L: LayeredTriangulation) -> ObstructionData:
        return resolve_obstruction(self.obstruction, L)

    def expected(self, n: int) -> LaurentPolynomial:
        return expected_polynomial(self.name, n, self.solution.field)


def m036_mapping_class() -> MappingClass:
    return MonodromyParser.parse_text(M036_MONODROMY)


def m036_layered() -> LayeredTriangulation:
    return build_layered(m036_mapping_class())


def m036_listings():
    return [parse_surface(text) for text in M036_LISTINGS]


def torus_mapping_class() -> MappingClass:
    return MonodromyParser.parse_text(TORUS_MONODROMY)


def two_layer_torus_mapping_class() -> MappingClass:
    return MonodromyParser.parse_text(TWO_LAYER_TORUS_MONODROMY)


def m036_case(name: str) -> FixtureCase:
    """'trivial' (Q(b), b² = 2b + 1) o 'signed' (Q(a), a³ + a² + a = 1)"""
    if name == "trivial":
        return FixtureCase(
            name="trivial",
            solution=SolutionParser.parse_text(M036_TRIVIAL_SOLUTION, name="m036_trivial"),
            obstruction=ObstructionSpec(kind="trivial"),
        )
    if name == "signed":
        return FixtureCase(
            name="signed",
            solution=SolutionParser.parse_text(M036_SIGNED_SOLUTION, name="m036_signed"),
            obstruction=ObstructionParser.parse_text(M036_SIGNED_OBSTRUCTION),
        )
    raise KeyError(f"Caso de m036 desconocido: {name}")


def m036_cases() -> Tuple[FixtureCase, ...]:
    return m036_case("trivial"), m036_case("signed")


def expected_polynomial(name: str, n: int, field: Optional[NumberField] = None) -> LaurentPolynomial:
    """Polinomio esperado del caso `name` sobre `field` (por defecto el de la solución)"""
    if field is None:
        field = m036_case(name).solution.field
    return parse_laurent(EXPECTED_POLYNOMIALS[(name, n)], field)
