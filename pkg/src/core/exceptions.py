"""
Jerarquía de errores del cálculo de torsión en triangulaciones en capas
"""

from typing import Optional


class LayeredTorsionError(Exception):
    """Error base; `invariant` nombra la condición que falló"""

    invariant: str = "layered_torsion"

    def __init__(self, message: str, invariant: Optional[str] = None):
        super().__init__(message)
        self.message = message
        if invariant is not None:
            self.invariant = invariant

    def __str__(self) -> str:
        return self.message


# Álgebra exacta

class AlgebraError(LayeredTorsionError):
    invariant = "algebra"


class DivisionByZero(AlgebraError, ZeroDivisionError):
    invariant = "division_by_zero"


class FieldMismatch(AlgebraError):
    invariant = "field_mismatch"


class ZeroPolynomial(AlgebraError):
    invariant = "nonzero_polynomial"


class NonSquare(AlgebraError):
    invariant = "square_matrix"


# Lectura de archivos

class ParseError(LayeredTorsionError, ValueError):
    invariant = "parse"


# Triangulaciones de superficies

class TriangulationError(LayeredTorsionError):
    invariant = "triangulation"


class InvalidTriangulation(TriangulationError):
    invariant = "edge_used_twice"


class NotFlippable(TriangulationError):
    invariant = "flippable_edge"


class InvalidIsometry(TriangulationError):
    invariant = "isometry_bijection"


# Triangulación en capas y obstrucciones

class BundleError(LayeredTorsionError):
    invariant = "bundle"


class ClosureMismatch(BundleError):
    invariant = "closure_match"


class InvalidCocycle(BundleError):
    invariant = "cocycle_triangle_product"


# Asignaciones de Ptolemy

class AssignmentError(LayeredTorsionError):
    invariant = "assignment"


class DegenerateAssignment(AssignmentError):
    invariant = "nonzero_ptolemy"


class InitialLengthMismatch(AssignmentError, ValueError):
    invariant = "initial_length"


class ResidualNonzero(AssignmentError):
    invariant = "closure_residual_zero"


class ZeroScalar(AssignmentError):
    invariant = "nonzero_scalar"
