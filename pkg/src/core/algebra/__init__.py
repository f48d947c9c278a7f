"""
Álgebra exacta: cuerpos de números, polinomios de Laurent, matrices y duales
"""

from src.core.algebra.dual import DualElement, dual_eval, dual_jacobian
from src.core.algebra.laurent import (
    LaurentPolynomial,
    loop_equal,
    normalize_loop,
    parse_laurent,
)
from src.core.algebra.matrix import (
    Matrix,
    characteristic_polynomial,
    det_bareiss,
    det_expansion,
    det_laurent,
)
from src.core.algebra.number_field import (
    NumberField,
    NumberFieldElement,
    Rational,
    to_rational,
)

__all__ = [
    "DualElement",
    "dual_eval",
    "dual_jacobian",
    "LaurentPolynomial",
    "loop_equal",
    "normalize_loop",
    "parse_laurent",
    "Matrix",
    "characteristic_polynomial",
    "det_bareiss",
    "det_expansion",
    "det_laurent",
    "NumberField",
    "NumberFieldElement",
    "Rational",
    "to_rational",
]
