"""
Modelos de datos para trabajos y reportes de torsión
"""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ObstructionMode(str, Enum):
    """Forma de los signos de obstrucción"""
    TRIVIAL = "trivial"
    EQUATION_SIGNS = "equation_signs"


class Method(str, Enum):
    """Caminos de cálculo del polinomio"""
    FULL_MATRIX = "full_matrix"
    REDUCED_JACOBIAN = "reduced_jacobian"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class JobConfig(BaseModel):
    """Configuración de un trabajo de la línea de comandos"""
    monodromy: Optional[Path] = Field(None, description="Archivo de monodromía")
    solutions: List[Path] = Field(default_factory=list, description="Archivos de solución")
    obstruction: str = Field("trivial", description="'trivial' o ruta a un archivo de obstrucción")
    ns: List[int] = Field(default_factory=lambda: [2, 3], description="Valores de n")
    methods: List[Method] = Field(
        default_factory=lambda: [Method.FULL_MATRIX, Method.REDUCED_JACOBIAN],
        description="Caminos de cálculo",
    )
    output: OutputFormat = Field(OutputFormat.TEXT)

    @field_validator("ns")
    @classmethod
    def validate_ns(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("Hay que elegir al menos un valor de n")
        if any(n not in (2, 3) for n in v):
            raise ValueError("n debe ser 2 o 3")
        return sorted(set(v))

    @field_validator("methods")
    @classmethod
    def validate_methods(cls, v: List[Method]) -> List[Method]:
        if not v:
            raise ValueError("Hay que elegir al menos un método")
        return sorted(set(v), key=lambda m: m.value)

    @field_validator("obstruction")
    @classmethod
    def validate_obstruction(cls, v: str) -> str:
        if not v or not v.strip():
            raise ValueError("La obstrucción no puede estar vacía")
        return v.strip()


class CheckResult(BaseModel):
    """Resultado de una verificación individual"""
    name: str
    status: CheckStatus
    detail: str = ""

    model_config = ConfigDict(use_enum_values=True)


class PolynomialBlock(BaseModel):
    """Bloque legible por máquina de un polinomio calculado"""
    n: int
    method: Method
    obstruction: str
    min_exp: int
    max_exp: int
    coefficients: List[str] = Field(..., description="Coeficientes desde min_exp hasta max_exp")
    text: str = Field(..., description="Forma canónica como texto")
    span: int
    norm_bound: str
    value_at_one: str = Field(..., description="Determinante sin normalizar evaluado en t = 1")

    model_config = ConfigDict(use_enum_values=True)


class BuildReport(BaseModel):
    monodromy: str
    n: int
    layers: int
    punctures: int
    genus: int
    boundary_components: int
    dump: str
    ptolemy_equations: List[str]
    face_equations: List[str]


class VerifyReport(BaseModel):
    solution: str
    field: str
    obstruction: str
    c_residual: List[str]
    theta_residual: Optional[List[str]] = None
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status == CheckStatus.PASS.value for c in self.checks)


class InvariantsReport(BaseModel):
    solution: str
    field: str
    obstruction: str
    polynomials: List[PolynomialBlock]
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status == CheckStatus.PASS.value for c in self.checks)


class DemoReport(BaseModel):
    reports: List[InvariantsReport]
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status == CheckStatus.PASS.value for c in self.checks) and all(
            r.passed for r in self.reports
        )


class ErrorResponse(BaseModel):
    """Respuesta de error"""
    error: str
    invariant: str
    detail: Optional[str] = None
