"""
Salida de reportes en texto o JSON
"""

import json
from typing import List, Sequence, Union

from pydantic import BaseModel

from src.core.config import settings
from src.core.models import (
    BuildReport,
    CheckResult,
    DemoReport,
    ErrorResponse,
    InvariantsReport,
    PolynomialBlock,
    VerifyReport,
)

Report = Union[BuildReport, VerifyReport, InvariantsReport, DemoReport, ErrorResponse]


def to_json(reports: Union[BaseModel, Sequence[BaseModel]]) -> str:
    if isinstance(reports, BaseModel):
        data = reports.model_dump(mode="json")
    else:
        data = [r.model_dump(mode="json") for r in reports]
    return json.dumps(data, indent=settings.json_indent, ensure_ascii=False)


def _checks(checks: Sequence[CheckResult]) -> List[str]:
    lines = ["verificaciones:"]
    for check in checks:
        line = f"  {check.status} {check.name}"
        if check.detail and check.status != "PASS":
            line += f" ({check.detail})"
        lines.append(line)
    return lines


def format_block(block: PolynomialBlock) -> List[str]:
    return [
        f"n={block.n} {block.method}: {block.text}",
        f"  exponentes {block.min_exp}..{block.max_exp}, span {block.span}, "
        f"cota de norma {block.norm_bound}, determinante en t=1: {block.value_at_one}",
    ]


def format_build(report: BuildReport) -> str:
    lines = [
        f"monodromía: {report.monodromy}",
        f"n={report.n} capas={report.layers} pinchazos={report.punctures} "
        f"género={report.genus} cúspides={report.boundary_components}",
        "",
        report.dump.rstrip("\n"),
        "",
        "ecuaciones de Ptolemy:",
    ]
    lines += [f"  P{i}: {eq}" for i, eq in enumerate(report.ptolemy_equations, start=1)]
    lines.append("ecuaciones de caras:")
    lines += [f"  E{i}: {eq}" for i, eq in enumerate(report.face_equations, start=1)]
    return "\n".join(lines)


def format_verify(report: VerifyReport) -> str:
    lines = [
        f"solución: {report.solution}",
        f"cuerpo: {report.field}",
        f"obstrucción: {report.obstruction}",
        "residuo c: [" + ", ".join(report.c_residual) + "]",
    ]
    if report.theta_residual is not None:
        lines.append("residuo θ: [" + ", ".join(report.theta_residual) + "]")
    return "\n".join(lines + _checks(report.checks))


def format_invariants(report: InvariantsReport) -> str:
    lines = [
        f"solución: {report.solution}",
        f"cuerpo: {report.field}",
        f"obstrucción: {report.obstruction}",
    ]
    for block in report.polynomials:
        lines += format_block(block)
    return "\n".join(lines + _checks(report.checks))


def format_demo(report: DemoReport) -> str:
    parts = [format_invariants(r) for r in report.reports]
    parts.append("\n".join(["demo m036"] + _checks(report.checks)))
    return "\n\n".join(parts)


def format_error(error: ErrorResponse) -> str:
    text = f"Error [{error.invariant}]: {error.error}"
    if error.detail:
        text += f"\n{error.detail}"
    return text


def render(reports: Union[Report, Sequence[Report]], as_json: bool = False) -> str:
    if as_json:
        return to_json(reports)
    items = [reports] if isinstance(reports, BaseModel) else list(reports)
    formatters = {
        BuildReport: format_build,
        VerifyReport: format_verify,
        InvariantsReport: format_invariants,
        DemoReport: format_demo,
        ErrorResponse: format_error,
    }
    return "\n\n".join(formatters[type(item)](item) for item in items)
