"""
Polinomios de Laurent en t con coeficientes en un cuerpo de números
"""

from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from sympy import Add, Symbol, expand
from sympy.parsing.sympy_parser import parse_expr

from src.core.algebra.number_field import (
    _TRANSFORMATIONS,
    NumberField,
    NumberFieldElement,
)
from src.core.exceptions import FieldMismatch, ParseError, ZeroPolynomial

Scalar = Union[int, NumberFieldElement]


class LaurentPolynomial:
    """Suma finita de términos c_k t^k con c_k en K no nulos"""

    __slots__ = ("field", "_terms")

    def __init__(self, field: NumberField, terms: Optional[Mapping[int, Scalar]] = None):
        self.field = field
        clean: Dict[int, NumberFieldElement] = {}
        for exponent, coeff in (terms or {}).items():
            value = field.coerce(coeff)
            if not value.is_zero():
                clean[int(exponent)] = value
        self._terms = clean

    # Construcción

    @classmethod
    def zero(cls, field: NumberField) -> "LaurentPolynomial":
        return cls(field)

    @classmethod
    def constant(cls, field: NumberField, value: Scalar) -> "LaurentPolynomial":
        return cls(field, {0: value})

    @classmethod
    def monomial(cls, field: NumberField, exponent: int, value: Scalar = 1) -> "LaurentPolynomial":
        return cls(field, {exponent: value})

    @classmethod
    def from_coefficients(
        cls, field: NumberField, coefficients: Iterable[Scalar], min_exp: int = 0
    ) -> "LaurentPolynomial":
        return cls(field, {min_exp + k: c for k, c in enumerate(coefficients)})

    # Consultas

    @property
    def terms(self) -> Dict[int, NumberFieldElement]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, NumberFieldElement]]:
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("El polinomio cero no tiene exponente mínimo")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("El polinomio cero no tiene exponente máximo")
        return max(self._terms)

    def coefficient(self, exponent: int) -> NumberFieldElement:
        return self._terms.get(exponent, self.field.zero())

    def coefficients(self) -> List[NumberFieldElement]:
        """Coeficientes densos desde min_exp hasta max_exp"""
        if not self._terms:
            return []
        return [self.coefficient(k) for k in range(self.min_exp, self.max_exp + 1)]

    def leading_coefficient(self) -> NumberFieldElement:
        return self._terms[self.max_exp]

    # Aritmética

    def _other(self, other) -> Optional["LaurentPolynomial"]:
        if isinstance(other, LaurentPolynomial):
            if other.field != self.field:
                raise FieldMismatch(
                    f"Polinomios sobre {self.field.name} y {other.field.name}"
                )
            return other
        if isinstance(other, (int, NumberFieldElement)):
            return LaurentPolynomial.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return LaurentPolynomial(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.field, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        terms: Dict[int, NumberFieldElement] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                k = i + j
                terms[k] = terms[k] + a * b if k in terms else a * b
        return LaurentPolynomial(self.field, terms)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiplica por t^k"""
        return LaurentPolynomial(self.field, {e + k: c for e, c in self._terms.items()})

    def evaluate(self, point: Scalar) -> NumberFieldElement:
        """Evalúa en t = point (point no nulo si hay exponentes negativos)"""
        value = self.field.coerce(point)
        result = self.field.zero()
        for exponent, coeff in self._terms.items():
            result = result + coeff * value ** exponent
        return result

    def map_coefficients(self, fn) -> "LaurentPolynomial":
        mapped = {k: fn(c) for k, c in self._terms.items()}
        target = next(iter(mapped.values())).field if mapped else self.field
        return LaurentPolynomial(target, mapped)

    # Comparación y texto

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.field == other.field and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.minimal_polynomial, tuple(sorted(self._terms.items()))))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*t^{k}" if _needs_parens(c) else f"{c}*t^{k}" for k, c in self.items())

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self}, {self.field.name})"


def _needs_parens(c: NumberFieldElement) -> bool:
    text = str(c)
    return not c.is_rational() or text.startswith("-") or "/" in text


def normalize_loop(p: LaurentPolynomial) -> LaurentPolynomial:
    """Representante canónico de {±t^k p}: exponente mínimo 0 y primer
    coordenada racional no nula del término independiente positiva"""
    if p.is_zero():
        raise ZeroPolynomial("normalize_loop no está definido para el polinomio cero")
    shifted = p.shift(-p.min_exp)
    constant = shifted.coefficient(0)
    first = next(c for c in constant.coords if c != 0)
    return -shifted if first < 0 else shifted


def loop_equal(p: LaurentPolynomial, q: LaurentPolynomial) -> bool:
    """Igualdad salvo signo y potencias de t"""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if p.field != q.field:
        return False
    return normalize_loop(p) == normalize_loop(q)


def parse_laurent(text: str, field: NumberField, variable: str = "t") -> LaurentPolynomial:
    """Lee un polinomio de Laurent, p. ej. '1*t^0 + (2*a^2 + 2)*t^1 - t^-3'"""
    t = Symbol(variable)
    gen = Symbol(field.generator)
    local_dict = {variable: t, field.generator: gen, "x": gen}
    try:
        expr = expand(parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMATIONS))
        grouped: Dict[int, object] = {}
        for term in Add.make_args(expr):
            coeff, exponent = term.as_coeff_exponent(t)
            if not exponent.is_integer:
                raise ParseError(f"Exponente no entero en '{term}'")
            k = int(exponent)
            grouped[k] = grouped.get(k, 0) + coeff
        terms = {k: field.from_sympy(c, gen) for k, c in grouped.items()}
    except ParseError:
        raise
    except Exception as e:
        raise ParseError(f"Polinomio de Laurent inválido '{text}': {e}")
    return LaurentPolynomial(field, terms)
