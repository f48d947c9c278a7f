"""
Matrices densas y determinantes exactos

El determinante de matrices de Laurent se calcula por evaluación e
interpolación: cada nodo racional da una matriz sobre K cuyo determinante
se obtiene por eliminación de Bareiss.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Generic, List, Sequence, Tuple, TypeVar

from loguru import logger

from src.core.algebra.laurent import LaurentPolynomial
from src.core.algebra.number_field import NumberField, NumberFieldElement
from src.core.exceptions import NonSquare

T = TypeVar("T")
S = TypeVar("S")


@dataclass(frozen=True)
class Matrix(Generic[T]):
    """Matriz rows x cols con entradas en orden por filas"""

    rows: int
    cols: int
    entries: Tuple[T, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError("Las dimensiones de la matriz deben ser positivas")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Se esperaban {self.rows * self.cols} entradas y hay {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[T]]) -> "Matrix[T]":
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("Todas las filas deben tener la misma longitud")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, one: T, zero: T) -> "Matrix[T]":
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> T:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[T, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[T]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def map(self, fn: Callable[[T], S]) -> "Matrix[S]":
        return Matrix(self.rows, self.cols, tuple(fn(x) for x in self.entries))

    def __add__(self, other: "Matrix[T]") -> "Matrix[T]":
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix[T]") -> "Matrix[T]":
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other: "Matrix[T]") -> "Matrix[T]":
        if self.cols != other.rows:
            raise ValueError("Dimensiones incompatibles para el producto")
        entries = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = self[i, 0] * other[0, j]
                for k in range(1, self.cols):
                    acc = acc + self[i, k] * other[k, j]
                entries.append(acc)
        return Matrix(self.rows, other.cols, tuple(entries))


def det_bareiss(M: Matrix[NumberFieldElement]) -> NumberFieldElement:
    """Determinante sobre K por eliminación libre de fracciones (Bareiss)"""
    if not M.is_square:
        raise NonSquare(f"Matriz {M.rows}x{M.cols} no cuadrada")
    n = M.rows
    field = M[0, 0].field
    a = M.to_rows()
    sign = 1
    previous = field.one()

    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if pivot is None:
                return field.zero()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous
        previous = a[k][k]

    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def _interpolate(field: NumberField, nodes: Sequence[int], values: Sequence[NumberFieldElement]) -> List[NumberFieldElement]:
    """Coeficientes (grado creciente) del polinomio que pasa por los nodos, vía diferencias divididas"""
    coef = list(values)
    size = len(nodes)
    for j in range(1, size):
        for i in range(size - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])

    poly = [coef[size - 1]]
    for k in range(size - 2, -1, -1):
        shifted = [field.zero()] + poly
        for i in range(len(poly)):
            shifted[i] = shifted[i] - poly[i] * nodes[k]
        shifted[0] = shifted[0] + coef[k]
        poly = shifted
    return poly


def det_laurent(M: Matrix[LaurentPolynomial]) -> LaurentPolynomial:
    """Determinante exacto de una matriz de polinomios de Laurent"""
    if not M.is_square:
        raise NonSquare(f"Matriz {M.rows}x{M.cols} no cuadrada")
    field = M[0, 0].field

    shifts: List[int] = []
    degree_bound = 0
    for i in range(M.rows):
        nonzero = [p for p in M.row(i) if not p.is_zero()]
        if not nonzero:
            return LaurentPolynomial.zero(field)
        low = min(p.min_exp for p in nonzero)
        shifts.append(low)
        degree_bound += max(p.max_exp for p in nonzero) - low

    shifted = [[p.shift(-shifts[i]) for p in M.row(i)] for i in range(M.rows)]
    nodes = list(range(degree_bound + 1))
    values = [
        det_bareiss(Matrix.from_rows([[p.evaluate(node) for p in row] for row in shifted]))
        for node in nodes
    ]
    logger.debug(f"det_laurent: matriz {M.rows}x{M.rows}, {len(nodes)} nodos de interpolación")

    coefficients = _interpolate(field, nodes, values)
    return LaurentPolynomial.from_coefficients(field, coefficients, min_exp=sum(shifts))


def det_expansion(M: Matrix[T], zero: T) -> T:
    """Determinante por expansión sobre permutaciones (solo matrices pequeñas)"""
    if not M.is_square:
        raise NonSquare(f"Matriz {M.rows}x{M.cols} no cuadrada")
    n = M.rows
    total = zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = M[0, perm[0]]
        for i in range(1, n):
            term = term * M[i, perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


def laurent_matrix(M: Matrix[NumberFieldElement]) -> Matrix[LaurentPolynomial]:
    return M.map(lambda x: LaurentPolynomial.constant(x.field, x))


def characteristic_polynomial(J: Matrix[NumberFieldElement]) -> LaurentPolynomial:
    """det(tI - J) como polinomio en t"""
    if not J.is_square:
        raise NonSquare(f"Matriz {J.rows}x{J.cols} no cuadrada")
    field = J[0, 0].field
    t = LaurentPolynomial.monomial(field, 1)
    zero = LaurentPolynomial.zero(field)
    tI = Matrix.identity(J.rows, t, zero)
    return det_laurent(tI - laurent_matrix(J))
