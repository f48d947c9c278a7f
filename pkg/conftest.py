"""
Fixtures compartidas de las pruebas: cuerpos, m036 y sus soluciones
"""

import sys
from pathlib import Path

import pytest

# Agregar el directorio raíz al path
sys.path.append(str(Path(__file__).parent))

from src.core.algebra import NumberField
from src.infrastructure.services.bundle import trivial_obstruction
from src.infrastructure.services.fixtures import (
    m036_case,
    m036_layered,
    m036_mapping_class,
    torus_mapping_class,
    two_layer_torus_mapping_class,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def QF():
    return NumberField.rationals()


@pytest.fixture(scope="session")
def K2():
    """Q(b) con b² - 2b - 1 = 0"""
    return NumberField.from_minpoly_text("x^2 - 2*x - 1", generator="b")


@pytest.fixture(scope="session")
def K3():
    """Q(a) con a³ + a² + a - 1 = 0"""
    return NumberField.from_minpoly_text("x^3 + x^2 + x - 1")


@pytest.fixture(scope="session")
def phi():
    return m036_mapping_class()


@pytest.fixture(scope="session")
def torus_phi():
    return torus_mapping_class()


@pytest.fixture(scope="session")
def two_layer_torus_phi():
    return two_layer_torus_mapping_class()


@pytest.fixture(scope="session")
def L():
    return m036_layered()


@pytest.fixture(scope="session")
def trivial_case():
    return m036_case("trivial")


@pytest.fixture(scope="session")
def signed_case():
    return m036_case("signed")


@pytest.fixture(scope="session")
def trivial_data(L):
    return trivial_obstruction(L)


@pytest.fixture(scope="session")
def signed_data(L, signed_case):
    return signed_case.resolve(L)


@pytest.fixture
def generic_c(QF):
    """Valores racionales iniciales sin anulaciones al propagar"""
    return [QF.from_rational(v) for v in (2, 3, 5, 7, 11, 13, 17, 19, 23)]
