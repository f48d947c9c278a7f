#!/usr/bin/env python3
"""
Pruebas del álgebra exacta: cuerpos de números, polinomios de Laurent,
determinantes y números duales
"""

import random
import sys
from pathlib import Path

import pytest

# Agregar el directorio raíz al path
sys.path.append(str(Path(__file__).parent))

from src.core.algebra import (
    DualElement,
    LaurentPolynomial,
    Matrix,
    NumberField,
    characteristic_polynomial,
    det_bareiss,
    det_expansion,
    det_laurent,
    dual_eval,
    dual_jacobian,
    loop_equal,
    normalize_loop,
    parse_laurent,
    to_rational,
)
from src.core.exceptions import (
    AlgebraError,
    DivisionByZero,
    FieldMismatch,
    NonSquare,
    ParseError,
    ZeroPolynomial,
)


def _random_element(rng, K):
    return K.element([to_rational(f"{rng.randint(-9, 9)}/{rng.randint(1, 4)}") for _ in range(K.degree)])


def _random_laurent(rng, K, low=-2, high=2):
    return LaurentPolynomial(K, {k: _random_element(rng, K) for k in range(low, high + 1) if rng.random() < 0.6})


# Cuerpos de números

def test_generator_square(K2):
    """b·b = 2b + 1"""
    b = K2.gen()
    assert b * b == 2 * b + 1


def test_product_reduces_to_one(K2):
    b = K2.gen()
    assert (b - 2) * b == 1


def test_multiply_then_reduce_matches_schoolbook(K3):
    """(a² + 1)(a² - a) = a⁴ - a³ + a² - a, reducido con a³ = 1 - a - a²"""
    a = K3.gen()
    assert (a ** 2 + 1) * (a ** 2 - a) == K3.element([-2, 2, 2])


def test_field_axioms_random(K2, K3):
    rng = random.Random(7)
    for K in (K2, K3):
        for _ in range(30):
            x, y, z = (_random_element(rng, K) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert x * K.one() == x
            if not x.is_zero():
                assert x * x.inverse() == 1
                assert (y / x) * x == y


def test_division_by_zero(K3):
    with pytest.raises(DivisionByZero):
        K3.one() / K3.zero()


def test_field_mismatch(K2, K3):
    with pytest.raises(FieldMismatch):
        K2.gen() + K3.gen()


def test_reducible_or_non_monic_minpoly():
    with pytest.raises(AlgebraError):
        NumberField.from_minpoly_text("x^2 - 1")
    with pytest.raises(AlgebraError):
        NumberField.from_minpoly_text("2*x^2 - 1")


def test_header_round_trip():
    K = NumberField.from_header("field: K; minpoly: x^3 + x^2 + x - 1")
    assert K.degree == 3
    assert NumberField.from_header(K.header()) == K
    B = NumberField.from_header("field: L; minpoly: x^2 - 2*x - 1; generator: b")
    assert B.generator == "b"
    assert B.header().endswith("generator: b")


def test_parse_element(K3):
    a = K3.gen()
    assert K3.parse("-a - a^2") == -a - a * a
    assert K3.parse("1 - 2*a/3") == 1 - a * to_rational("2/3")
    assert str(K3.parse("2*a^2 + 4*a + 2")) == "2*a^2 + 4*a + 2"
    with pytest.raises(ParseError):
        K3.parse("a +* 2")


def test_galois_substitution(K2):
    """b ↦ 2 - b es un automorfismo de Q(b)"""
    b = K2.gen()
    image = 2 - b
    rng = random.Random(3)
    for _ in range(20):
        x, y = _random_element(rng, K2), _random_element(rng, K2)
        assert (x * y).substitute(image) == x.substitute(image) * y.substitute(image)
        assert (x + y).substitute(image) == x.substitute(image) + y.substitute(image)
    assert b.substitute(image).substitute(image) == b


# Polinomios de Laurent

def test_laurent_product(QF):
    t = LaurentPolynomial.monomial(QF, 1)
    assert (t - 1) * (t + 1) == t * t - 1
    p = parse_laurent("3*t^-2 + t^4", QF)
    assert p * 1 == p


def test_laurent_convolution(K3):
    rng = random.Random(11)
    for _ in range(10):
        p = LaurentPolynomial.from_coefficients(K3, [_random_element(rng, K3) for _ in range(6)])
        q = LaurentPolynomial.from_coefficients(K3, [_random_element(rng, K3) for _ in range(6)], min_exp=-3)
        product = p * q
        for k in range(-3, 8):
            expected = K3.zero()
            for i in range(0, 6):
                expected = expected + p.coefficient(i) * q.coefficient(k - i)
            assert product.coefficient(k) == expected


def test_zero_coefficients_pruned(QF):
    t = LaurentPolynomial.monomial(QF, 1)
    assert (t - t).is_zero()
    assert (t + 1 - t).terms == {0: QF.one()}


def test_normalize_loop_examples(QF):
    p = parse_laurent("-t^3 + t^5", QF)
    assert normalize_loop(p) == parse_laurent("1 - t^2", QF)
    q = parse_laurent("1 - 2*t + t^2 + t^4 - 2*t^5 + t^6", QF)
    assert normalize_loop(q) == q


def test_normalize_loop_orbit(K3):
    rng = random.Random(5)
    for _ in range(20):
        p = _random_laurent(rng, K3)
        if p.is_zero():
            continue
        k = rng.randint(-5, 5)
        sign = rng.choice((1, -1))
        moved = p.shift(k) * sign
        assert normalize_loop(moved) == normalize_loop(p)
        assert normalize_loop(normalize_loop(p)) == normalize_loop(p)


def test_normalize_zero_raises(QF):
    with pytest.raises(ZeroPolynomial):
        normalize_loop(LaurentPolynomial.zero(QF))


def test_loop_equal(QF):
    p = parse_laurent("1 + 3*t - t^2", QF)
    assert loop_equal(p, -p.shift(7))
    assert not loop_equal(parse_laurent("t^2 - 1", QF), parse_laurent("t^2 + 1", QF))
    zero = LaurentPolynomial.zero(QF)
    assert loop_equal(zero, zero)
    assert not loop_equal(zero, p)


def test_laurent_text_round_trip(K3):
    p = parse_laurent("1 + (2*a^2 + 2*a + 2)*t + (a^2 + 2*a + 4)*t^2 - t^-1", K3)
    assert parse_laurent(str(p), K3) == p
    assert p.min_exp == -1 and p.max_exp == 2


# Determinantes

def test_det_one_by_one(QF):
    p = parse_laurent("2 - t^3", QF)
    assert det_laurent(Matrix.from_rows([[p]])) == p


def test_det_non_square(QF):
    zero = LaurentPolynomial.zero(QF)
    with pytest.raises(NonSquare):
        det_laurent(Matrix.from_rows([[zero, zero]]))


@pytest.mark.parametrize("size", [1, 2, 3, 4])
def test_det_laurent_matches_expansion(size, QF, K2):
    rng = random.Random(100 + size)
    for K in (QF, K2):
        for _ in range(13):
            M = Matrix.from_rows([[_random_laurent(rng, K) for _ in range(size)] for _ in range(size)])
            assert det_laurent(M) == det_expansion(M, LaurentPolynomial.zero(K))


def test_det_multiplicative(QF):
    rng = random.Random(21)
    for _ in range(5):
        M = Matrix.from_rows([[_random_laurent(rng, QF, -1, 1) for _ in range(3)] for _ in range(3)])
        N = Matrix.from_rows([[_random_laurent(rng, QF, -1, 1) for _ in range(3)] for _ in range(3)])
        assert det_laurent(M * N) == det_laurent(M) * det_laurent(N)


def test_bareiss_matches_expansion(K3):
    rng = random.Random(9)
    for size in range(1, 5):
        M = Matrix.from_rows([[_random_element(rng, K3) for _ in range(size)] for _ in range(size)])
        assert det_bareiss(M) == det_expansion(M, K3.zero())


def test_bareiss_needs_pivoting(QF):
    M = Matrix.from_rows([[QF.from_rational(v) for v in row] for row in ((0, 1), (1, 0))])
    assert det_bareiss(M) == -1


def test_characteristic_polynomial(QF):
    A = Matrix.from_rows([[QF.from_rational(v) for v in row] for row in ((2, 1, 0), (0, 3, 1), (1, 0, 1))])
    p = characteristic_polynomial(A)
    # t³ - tr(A) t² + (suma de menores 2x2) t - det(A)
    expected = parse_laurent("t^3 - 6*t^2 + 11*t - 7", QF)
    assert p == expected
    assert p.evaluate(2) == det_bareiss(Matrix.identity(3, QF.from_rational(2), QF.zero()) - A)


# Números duales

def test_dual_product(QF):
    point = [QF.from_rational(2), QF.from_rational(3)]
    result = dual_eval(lambda c: c[0] * c[1], point, [0, 1])
    assert result.value == 6
    assert result.partials == (QF.from_rational(3), QF.from_rational(2))


def test_dual_quotient(QF):
    point = [QF.from_rational(1), QF.from_rational(2)]
    result = dual_eval(lambda c: c[0] / c[1], point, [0, 1])
    assert result.value == to_rational("1/2")
    assert result.partials == (QF.from_rational(to_rational("1/2")), QF.from_rational(to_rational("-1/4")))


def test_dual_division_by_zero(QF):
    point = [QF.one(), QF.zero()]
    with pytest.raises(DivisionByZero):
        dual_eval(lambda c: c[0] / c[1], point, [0])


def test_dual_quotient_rule(K2):
    """Gradiente de c9 = (c2 c6 + c4 c7)/c8 frente a la regla del cociente"""
    values = [K2.from_rational(i + 2) + i * K2.gen() for i in range(9)]
    c2, c4, c6, c7, c8 = values[2], values[4], values[6], values[7], values[8]
    result = dual_eval(lambda c: (c[2] * c[6] + c[4] * c[7]) / c[8], values, [2, 4, 6, 7, 8])
    numerator = c2 * c6 + c4 * c7
    assert result.value == numerator / c8
    assert result.partials == (c6 / c8, c7 / c8, c2 / c8, c4 / c8, -numerator / (c8 * c8))


def test_dual_jacobian(QF):
    point = [QF.from_rational(2), QF.from_rational(5)]
    rows = dual_jacobian(lambda c: [c[0] * c[1], c[0] - c[1]], point, [0, 1])
    assert rows == [[QF.from_rational(5), QF.from_rational(2)], [QF.one(), -QF.one()]]


def test_dual_constant_has_zero_partials(QF):
    x = DualElement.constant(QF.from_rational(4), 3)
    assert all(p.is_zero() for p in x.partials)
    assert (x * 2).value == 8
