"""
Aritmética exacta sobre Q y sobre cuerpos de números K = Q[x]/(f)

Los coeficientes racionales son elementos del dominio QQ de sympy; las
operaciones polinomiales usan las rutinas densas de sympy (listas con el
coeficiente de mayor grado primero).
"""

import re
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Poly, Symbol
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.densearith import dup_mul, dup_rem
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.polyerrors import NotInvertible

from src.core.exceptions import (
    AlgebraError,
    DivisionByZero,
    FieldMismatch,
    ParseError,
)

# Tipo de los racionales exactos (numerador/denominador reducidos)
Rational = QQ.dtype

_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_HEADER_RE = re.compile(
    r"^\s*field\s*:\s*(?P<name>[^;]+?)\s*;\s*minpoly\s*:\s*(?P<minpoly>[^;]+?)\s*"
    r"(?:;\s*generator\s*:\s*(?P<generator>\w+)\s*)?$"
)


def to_rational(value: Union[int, str, "Rational"]) -> "Rational":
    """Convierte enteros, cadenas 'p/q' o racionales al tipo exacto"""
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return QQ(int(num), int(den)) if den else QQ(int(num))
    return QQ.convert(value)


def format_rational(value: "Rational") -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_sympy_poly(expr, symbol: Symbol) -> List["Rational"]:
    """Coeficientes (mayor grado primero) de una expresión polinomial en `symbol`"""
    poly = Poly(expr, symbol, domain=QQ)
    return [QQ.convert(c) for c in poly.all_coeffs()]


@dataclass(frozen=True)
class NumberField:
    """Cuerpo Q[x]/(f) con f mónico e irreducible.

    `minimal_polynomial` guarda los coeficientes de f de grado 0 a grado d.
    """

    minimal_polynomial: Tuple["Rational", ...]
    name: str = field(default="K", compare=False)
    generator: str = field(default="a", compare=False)

    def __post_init__(self):
        coeffs = tuple(QQ.convert(c) for c in self.minimal_polynomial)
        object.__setattr__(self, "minimal_polynomial", coeffs)
        if len(coeffs) < 2:
            raise AlgebraError("El polinomio mínimo debe tener grado al menos 1")
        if coeffs[-1] != QQ.one:
            raise AlgebraError("El polinomio mínimo debe ser mónico")
        if len(coeffs) > 2:
            poly = Poly.from_list(list(reversed(coeffs)), Symbol("x"), domain=QQ)
            if not poly.is_irreducible:
                raise AlgebraError(f"El polinomio mínimo {self.minpoly_text()} no es irreducible sobre Q")

    # Construcción

    @classmethod
    def rationals(cls, name: str = "Q") -> "NumberField":
        """Q visto como cuerpo de grado 1 (polinomio mínimo x)"""
        return cls((QQ.zero, QQ.one), name=name, generator="a")

    @classmethod
    def from_minpoly_text(cls, text: str, name: str = "K", generator: str = "a") -> "NumberField":
        """Construye el cuerpo a partir de un polinomio mónico en x, p. ej. 'x^2 - 2*x - 1'"""
        x = Symbol("x")
        try:
            expr = parse_expr(text, local_dict={"x": x}, transformations=_TRANSFORMATIONS)
            high_first = _to_sympy_poly(expr, x)
        except Exception as e:
            raise ParseError(f"Polinomio mínimo inválido '{text}': {e}")
        return cls(tuple(reversed(high_first)), name=name, generator=generator)

    @classmethod
    def from_header(cls, text: str) -> "NumberField":
        """Lee la cabecera `field: K; minpoly: x^3 + x^2 + x - 1[; generator: a]`"""
        match = _HEADER_RE.match(text)
        if not match:
            raise ParseError(f"Cabecera de cuerpo inválida: '{text.strip()}'")
        return cls.from_minpoly_text(
            match.group("minpoly"),
            name=match.group("name"),
            generator=match.group("generator") or "a",
        )

    # Propiedades

    @property
    def degree(self) -> int:
        return len(self.minimal_polynomial) - 1

    @property
    def _modulus(self) -> List["Rational"]:
        return list(reversed(self.minimal_polynomial))

    def minpoly_text(self) -> str:
        return _format_poly(self.minimal_polynomial, "x")

    def header(self) -> str:
        text = f"field: {self.name}; minpoly: {self.minpoly_text()}"
        if self.generator != "a":
            text += f"; generator: {self.generator}"
        return text

    # Elementos

    def element(self, coords: Iterable[Union[int, "Rational"]]) -> "NumberFieldElement":
        values = tuple(QQ.convert(c) for c in coords)
        if len(values) != self.degree:
            raise AlgebraError(
                f"Se esperaban {self.degree} coordenadas y se recibieron {len(values)}"
            )
        return NumberFieldElement(self, values)

    def from_high_first(self, poly: Sequence["Rational"]) -> "NumberFieldElement":
        """Reduce un polinomio (mayor grado primero) módulo f"""
        reduced = dup_rem(dup_strip(list(poly)), self._modulus, QQ)
        coords = list(reversed(reduced)) + [QQ.zero] * (self.degree - len(reduced))
        return NumberFieldElement(self, tuple(coords))

    def from_rational(self, value: Union[int, "Rational"]) -> "NumberFieldElement":
        return NumberFieldElement(self, (QQ.convert(value),) + (QQ.zero,) * (self.degree - 1))

    def zero(self) -> "NumberFieldElement":
        return self.from_rational(0)

    def one(self) -> "NumberFieldElement":
        return self.from_rational(1)

    def gen(self) -> "NumberFieldElement":
        return self.from_high_first([QQ.one, QQ.zero])

    def coerce(self, value) -> "NumberFieldElement":
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise FieldMismatch(f"Elemento de {value.field.name} usado en {self.name}")
            return value
        if isinstance(value, int) or QQ.of_type(value):
            return self.from_rational(value)
        raise FieldMismatch(f"No se puede convertir {value!r} a un elemento de {self.name}")

    def from_sympy(self, expr, symbol: Symbol) -> "NumberFieldElement":
        return self.from_high_first(_to_sympy_poly(expr, symbol))

    def parse(self, text: str) -> "NumberFieldElement":
        """Lee un polinomio en el generador, p. ej. '-a - a^2' o '1 - 2*a/3'"""
        symbol = Symbol(self.generator)
        local_dict = {self.generator: symbol, "x": symbol}
        try:
            expr = parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMATIONS)
            return self.from_sympy(expr, symbol)
        except Exception as e:
            raise ParseError(f"Elemento inválido '{text}' en {self.name}: {e}")


def _format_poly(coords: Sequence["Rational"], var: str) -> str:
    """Texto de un polinomio dado de grado 0 a grado d (mayor grado primero en la salida)"""
    pieces: List[Tuple[bool, str]] = []
    for power in range(len(coords) - 1, -1, -1):
        coeff = coords[power]
        if coeff == 0:
            continue
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if power == 0:
            body = format_rational(magnitude)
        else:
            monomial = var if power == 1 else f"{var}^{power}"
            body = monomial if magnitude == 1 else f"{format_rational(magnitude)}*{monomial}"
        pieces.append((negative, body))
    if not pieces:
        return "0"
    first_negative, first_body = pieces[0]
    text = f"-{first_body}" if first_negative else first_body
    for negative, body in pieces[1:]:
        text += f" - {body}" if negative else f" + {body}"
    return text


@dataclass(frozen=True, eq=False)
class NumberFieldElement:
    """Elemento de K guardado como vector de coordenadas en la base 1, x, ..., x^{d-1}"""

    field: NumberField
    coords: Tuple["Rational", ...]

    # Utilidades internas

    def _other(self, other) -> Optional["NumberFieldElement"]:
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                raise FieldMismatch(
                    f"Operación entre {self.field.name} y {other.field.name}"
                )
            return other
        if isinstance(other, int) or QQ.of_type(other):
            return self.field.from_rational(other)
        return None

    def _high_first(self) -> List["Rational"]:
        return dup_strip(list(reversed(self.coords)))

    # Consultas

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    # Aritmética

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return NumberFieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return NumberFieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (self.coords[0] * other.coords[0],))
        product = dup_mul(self._high_first(), other._high_first(), QQ)
        return self.field.from_high_first(product)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        """Inverso por el algoritmo de Euclides extendido módulo f"""
        if self.is_zero():
            raise DivisionByZero(f"División por cero en {self.field.name}")
        if self.field.degree == 1:
            return NumberFieldElement(self.field, (QQ.one / self.coords[0],))
        try:
            inv = dup_invert(self._high_first(), self.field._modulus, QQ)
        except NotInvertible:
            raise DivisionByZero(f"{self} no es invertible en {self.field.name}")
        return self.field.from_high_first(inv)

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = self.field.one()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # Homomorfismos

    def substitute(self, image: "NumberFieldElement") -> "NumberFieldElement":
        """Aplica el homomorfismo que envía el generador a `image`"""
        result = image.field.zero()
        for coeff in reversed(self.coords):
            result = result * image + coeff
        return result

    # Comparación y texto

    def __eq__(self, other) -> bool:
        if isinstance(other, NumberFieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, int) or QQ.of_type(other):
            return self.coords == self.field.from_rational(other).coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.minimal_polynomial, self.coords))

    def __str__(self) -> str:
        return _format_poly(self.coords, self.field.generator)

    def __repr__(self) -> str:
        return f"NumberFieldElement({self}, {self.field.name})"
