"""
Números duales sobre K para derivadas exactas (modo directo)
"""

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple, Union

from src.core.algebra.number_field import NumberField, NumberFieldElement
from src.core.exceptions import DivisionByZero

Operand = Union[int, NumberFieldElement, "DualElement"]


@dataclass(frozen=True)
class DualElement:
    """value + sum(partials[k] * eps_k) con eps_j * eps_k = 0"""

    value: NumberFieldElement
    partials: Tuple[NumberFieldElement, ...]

    @classmethod
    def constant(cls, value: NumberFieldElement, size: int) -> "DualElement":
        zero = value.field.zero()
        return cls(value, (zero,) * size)

    @classmethod
    def variable(cls, value: NumberFieldElement, index: int, size: int) -> "DualElement":
        zero, one = value.field.zero(), value.field.one()
        return cls(value, tuple(one if k == index else zero for k in range(size)))

    @property
    def field(self) -> NumberField:
        return self.value.field

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def _lift(self, other: Operand) -> "DualElement":
        if isinstance(other, DualElement):
            if len(other.partials) != len(self.partials):
                raise ValueError("Números duales con distinto número de variables activas")
            return other
        return DualElement.constant(self.field.coerce(other), len(self.partials))

    def __add__(self, other: Operand) -> "DualElement":
        other = self._lift(other)
        return DualElement(
            self.value + other.value,
            tuple(a + b for a, b in zip(self.partials, other.partials)),
        )

    __radd__ = __add__

    def __neg__(self) -> "DualElement":
        return DualElement(-self.value, tuple(-a for a in self.partials))

    def __sub__(self, other: Operand) -> "DualElement":
        return self + (-self._lift(other))

    def __rsub__(self, other: Operand) -> "DualElement":
        return self._lift(other) - self

    def __mul__(self, other: Operand) -> "DualElement":
        other = self._lift(other)
        return DualElement(
            self.value * other.value,
            tuple(self.value * b + a * other.value for a, b in zip(self.partials, other.partials)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "DualElement":
        other = self._lift(other)
        if other.value.is_zero():
            raise DivisionByZero("División de números duales por parte real nula")
        inv = other.value.inverse()
        value = self.value * inv
        inv_sq = inv * inv
        return DualElement(
            value,
            tuple((a * other.value - self.value * b) * inv_sq for a, b in zip(self.partials, other.partials)),
        )

    def __rtruediv__(self, other: Operand) -> "DualElement":
        return self._lift(other) / self


def _dual_point(point: Sequence[NumberFieldElement], active: Sequence[int]) -> List[DualElement]:
    size = len(active)
    slot = {var: k for k, var in enumerate(active)}
    return [
        DualElement.variable(x, slot[i], size) if i in slot else DualElement.constant(x, size)
        for i, x in enumerate(point)
    ]


def dual_eval(
    f: Callable[[List[DualElement]], DualElement],
    point: Sequence[NumberFieldElement],
    active: Sequence[int],
) -> DualElement:
    """Evalúa f en `point` con derivadas respecto de las variables `active`"""
    return f(_dual_point(point, active))


def dual_jacobian(
    f: Callable[[List[DualElement]], Sequence[DualElement]],
    point: Sequence[NumberFieldElement],
    active: Sequence[int],
) -> List[List[NumberFieldElement]]:
    """Matriz jacobiana de una función con varias salidas: una fila por salida"""
    return [list(out.partials) for out in f(_dual_point(point, active))]
