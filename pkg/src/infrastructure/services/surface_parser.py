"""
Parsers de los formatos de texto: triangulaciones, monodromías, soluciones
de Ptolemy y datos de obstrucción
"""

import ast
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from loguru import logger

from src.core.algebra.number_field import NumberField, NumberFieldElement
from src.core.exceptions import ParseError
from src.infrastructure.services.surface import (
    MappingClass,
    OrientedEdge,
    SurfaceTriangulation,
)

_LABEL = r"~?\s*\d+"
_TRIPLE = rf"\(\s*({_LABEL})\s*,\s*({_LABEL})\s*,\s*({_LABEL})\s*\)"
_TRIPLE_RE = re.compile(_TRIPLE)
_SURFACE_RE = re.compile(rf"^\s*\[\s*(?:{_TRIPLE}\s*(?:,\s*{_TRIPLE}\s*)*)?\]\s*$")
_LIST_RE = re.compile(rf"^\s*\[\s*(?:{_LABEL}\s*(?:,\s*{_LABEL}\s*)*)?\]\s*$")
_KEY_RE = re.compile(r"^\s*(?P<key>\w+)\s*[:=]\s*(?P<value>.*?)\s*$")


def parse_label(token: str) -> OrientedEdge:
    token = token.replace(" ", "")
    if token.startswith("~"):
        return OrientedEdge(int(token[1:]), True)
    return OrientedEdge(int(token), False)


def parse_surface(text: str) -> SurfaceTriangulation:
    """Lee '[(~8, ~1, ~4),(~7, ~3, 2),...]' y valida el uso de las aristas"""
    if not _SURFACE_RE.match(text):
        raise ParseError(f"Triangulación mal formada: '{text.strip()}'")
    triangles = tuple(
        tuple(parse_label(tok) for tok in match.groups())
        for match in _TRIPLE_RE.finditer(text)
    )
    return SurfaceTriangulation(triangles)


def parse_label_list(text: str) -> List[OrientedEdge]:
    """Lee '[1, 2, ~0]'"""
    if not _LIST_RE.match(text):
        raise ParseError(f"Lista de aristas mal formada: '{text.strip()}'")
    inner = text.strip()[1:-1]
    return [parse_label(tok) for tok in inner.split(",") if tok.strip()]


def _split_top_level(text: str) -> List[str]:
    """Separa por comas fuera de paréntesis"""
    items, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        items.append(tail)
    return items


def _content_lines(text: str) -> List[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _key_values(lines: List[str], source: str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for line in lines:
        match = _KEY_RE.match(line)
        if not match:
            raise ParseError(f"Línea no reconocida en {source}: '{line}'")
        key = match.group("key").lower()
        if key in values:
            raise ParseError(f"Clave '{key}' repetida en {source}")
        values[key] = match.group("value")
    return values


class MonodromyParser:
    """Parser para archivos de monodromía (triangulación, isometría y flips)"""

    def __init__(self, file_path: str):
        self.file_path = Path(file_path)
        self.mapping_class: Optional[MappingClass] = None

    def read_text(self) -> str:
        try:
            return self.file_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"No se pudo leer {self.file_path}: {e}")

    @staticmethod
    def parse_text(text: str) -> MappingClass:
        values = _key_values(_content_lines(text), "la monodromía")
        for key in ("triangulation", "isometry", "flips"):
            if key not in values:
                raise ParseError(f"Falta la línea '{key}:' en la monodromía")

        source = parse_surface(values["triangulation"])
        isometry = tuple(parse_label_list(values["isometry"]))
        flips = parse_label_list(values["flips"])
        if any(f.reversed for f in flips):
            raise ParseError("Los flips deben ser índices de arista sin orientación")
        return MappingClass(source, isometry, tuple(f.index for f in flips))

    def parse(self) -> MappingClass:
        self.mapping_class = self.parse_text(self.read_text())
        logger.debug(
            f"Monodromía leída de {self.file_path}: "
            f"{len(self.mapping_class.source.triangles)} triángulos, "
            f"{len(self.mapping_class.flips)} flips"
        )
        return self.mapping_class

    def get_statistics(self) -> Dict[str, Any]:
        """Estadísticas de la monodromía leída"""
        phi = self.mapping_class or self.parse()
        source = phi.source
        return {
            "triangles": len(source.triangles),
            "edges": source.num_edges,
            "n": source.n,
            "punctures": source.num_punctures,
            "genus": source.genus,
            "flips": len(phi.flips),
        }


@dataclass(frozen=True)
class Solution:
    """Valores iniciales de Ptolemy (y opcionalmente θ) sobre un cuerpo de números"""

    field: NumberField
    c: Tuple[NumberFieldElement, ...]
    theta: Optional[Tuple[NumberFieldElement, ...]] = None
    name: str = "solution"

    def to_text(self) -> str:
        text = self.field.header() + "\n"
        text += "c = [" + ", ".join(str(v) for v in self.c) + "]\n"
        if self.theta is not None:
            text += "theta = [" + ", ".join(str(v) for v in self.theta) + "]\n"
        return text


class SolutionParser:
    """Parser para archivos de solución: cabecera del cuerpo, `c = [...]` y `theta = [...]` opcional"""

    def __init__(self, file_path: str):
        self.file_path = Path(file_path)

    @staticmethod
    def _parse_vector(field_: NumberField, text: str, name: str) -> Tuple[NumberFieldElement, ...]:
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError(f"El vector '{name}' debe ir entre corchetes")
        return tuple(field_.parse(item) for item in _split_top_level(text[1:-1]))

    @classmethod
    def parse_text(cls, text: str, name: str = "solution") -> Solution:
        lines = _content_lines(text)
        if not lines:
            raise ParseError("Archivo de solución vacío")
        field_ = NumberField.from_header(lines[0])
        values = _key_values(lines[1:], "la solución")
        if "c" not in values:
            raise ParseError("Falta el vector 'c = [...]' en la solución")
        unknown = set(values) - {"c", "theta"}
        if unknown:
            raise ParseError(f"Claves desconocidas en la solución: {sorted(unknown)}")
        c = cls._parse_vector(field_, values["c"], "c")
        theta = cls._parse_vector(field_, values["theta"], "theta") if "theta" in values else None
        return Solution(field_, c, theta, name=name)

    def parse(self) -> Solution:
        try:
            text = self.file_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"No se pudo leer {self.file_path}: {e}")
        solution = self.parse_text(text, name=self.file_path.stem)
        logger.debug(f"Solución leída de {self.file_path} sobre {solution.field.header()}")
        return solution


@dataclass(frozen=True)
class ObstructionSpec:
    """Obstrucción tal como aparece en el archivo, antes de conocer la triangulación"""

    kind: str  # trivial | signs | cocycle
    label: str = "trivial"
    values: Dict[str, Any] = field(default_factory=dict)


class ObstructionParser:
    """Parser para archivos de obstrucción (`obstruction: signs` o `obstruction: cocycle`)"""

    KINDS = ("trivial", "signs", "cocycle")

    def __init__(self, file_path: str):
        self.file_path = Path(file_path)

    @staticmethod
    def _literal(key: str, text: str) -> Any:
        try:
            return ast.literal_eval(text)
        except (ValueError, SyntaxError) as e:
            raise ParseError(f"Valor inválido para '{key}': {e}")

    @classmethod
    def parse_text(cls, text: str, label: Optional[str] = None) -> ObstructionSpec:
        values = _key_values(_content_lines(text), "la obstrucción")
        kind = values.pop("obstruction", "").lower()
        if kind not in cls.KINDS:
            raise ParseError(f"Tipo de obstrucción desconocido: '{kind}' (use {', '.join(cls.KINDS)})")
        name = values.pop("label", label or kind)
        parsed = {key: cls._literal(key, value) for key, value in values.items()}

        required = {"signs": ("ptolemy", "faces"), "cocycle": ("negative",), "trivial": ()}[kind]
        for key in required:
            if key not in parsed:
                raise ParseError(f"Falta '{key}:' en la obstrucción de tipo {kind}")
        return ObstructionSpec(kind=kind, label=name, values=parsed)

    def parse(self) -> ObstructionSpec:
        try:
            text = self.file_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"No se pudo leer {self.file_path}: {e}")
        return self.parse_text(text, label=self.file_path.stem)


def load_monodromy(path: str) -> MappingClass:
    """Función de conveniencia para leer una monodromía"""
    return MonodromyParser(path).parse()


def load_solution(path: str) -> Solution:
    return SolutionParser(path).parse()


def load_obstruction(spec: str) -> ObstructionSpec:
    """'trivial' o la ruta de un archivo de obstrucción"""
    if spec.strip().lower() == "trivial":
        return ObstructionSpec(kind="trivial")
    return ObstructionParser(spec).parse()
