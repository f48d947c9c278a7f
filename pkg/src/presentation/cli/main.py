"""
Línea de comandos: build, verify, invariants y demo
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from src.core.config import settings, setup_logging
from src.core.exceptions import LayeredTorsionError
from src.core.models import CheckResult, ErrorResponse, JobConfig, Method, OutputFormat
from src.infrastructure.services.pipeline import TorsionPipeline
from src.presentation.cli.formatting import render

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

_N_CHOICES = {"2": [2], "3": [3], "both": [2, 3]}
_METHOD_CHOICES = {
    "full": [Method.FULL_MATRIX],
    "reduced": [Method.REDUCED_JACOBIAN],
    "both": [Method.FULL_MATRIX, Method.REDUCED_JACOBIAN],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="layered-torsion",
        description="Polinomios 1-loop y de torsión de triangulaciones en capas",
    )
    parser.add_argument("--log-level", default=None, help="Nivel de log (por defecto, el de la configuración)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="Salida JSON")

    def monodromy(p: argparse.ArgumentParser) -> None:
        p.add_argument("--monodromy", type=Path, required=True, help="Archivo de monodromía")
        p.add_argument("--obstruction", default="trivial", help="'trivial' o ruta a un archivo de obstrucción")

    def selection(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", choices=sorted(_N_CHOICES), default=settings.default_n)
        p.add_argument("--method", choices=sorted(_METHOD_CHOICES), default=settings.default_method)

    p_build = sub.add_parser("build", help="Construye la triangulación en capas y muestra las ecuaciones")
    monodromy(p_build)
    common(p_build)

    p_verify = sub.add_parser("verify", help="Comprueba los residuos de cierre de una solución")
    monodromy(p_verify)
    p_verify.add_argument("--solution", type=Path, action="append", required=True, help="Archivo de solución")
    common(p_verify)

    p_inv = sub.add_parser("invariants", help="Calcula δ/τ para n = 2, 3")
    monodromy(p_inv)
    p_inv.add_argument("--solution", type=Path, action="append", required=True, help="Archivo de solución")
    selection(p_inv)
    common(p_inv)

    p_demo = sub.add_parser("demo", help="Reproduce el ejemplo m036 con los datos incorporados")
    selection(p_demo)
    common(p_demo)
    return parser


def job_config(args: argparse.Namespace) -> JobConfig:
    return JobConfig(
        monodromy=getattr(args, "monodromy", None),
        solutions=getattr(args, "solution", None) or [],
        obstruction=getattr(args, "obstruction", "trivial"),
        ns=_N_CHOICES[getattr(args, "n", "both")],
        methods=_METHOD_CHOICES[getattr(args, "method", "both")],
        output=OutputFormat.JSON if args.json else OutputFormat.TEXT,
    )


def _status(checks: Sequence[CheckResult]) -> int:
    failed = [c.name for c in checks if c.status != "PASS"]
    if failed:
        logger.error(f"Verificaciones fallidas: {', '.join(failed)}")
        return EXIT_FAILED
    return EXIT_OK


def run(args: argparse.Namespace, pipeline: TorsionPipeline) -> int:
    job = job_config(args)
    as_json = job.output == OutputFormat.JSON

    if args.command == "build":
        print(render(pipeline.build(job.monodromy, job.obstruction), as_json))
        return EXIT_OK

    if args.command == "verify":
        reports = pipeline.verify(job)
        print(render(reports, as_json))
        return _status([c for r in reports for c in r.checks])

    if args.command == "invariants":
        reports = pipeline.invariants(job)
        print(render(reports, as_json))
        return _status([c for r in reports for c in r.checks])

    report = pipeline.demo(job.ns, job.methods)
    print(render(report, as_json))
    return _status(list(report.checks) + [c for r in report.reports for c in r.checks])


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    as_json = getattr(args, "json", False)

    try:
        return run(args, TorsionPipeline())
    except LayeredTorsionError as e:
        logger.error(f"{type(e).__name__}: {e}")
        error = ErrorResponse(error=type(e).__name__, invariant=e.invariant, detail=e.message)
    except ValidationError as e:
        logger.error(f"Configuración inválida: {e}")
        error = ErrorResponse(error="ValidationError", invariant="job_config", detail=str(e))

    if as_json:
        print(render(error, as_json=True))
    else:
        print(render(error), file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
