"""
Configuración centralizada de la aplicación
"""

import sys
from pathlib import Path
from typing import Optional

from pydantic import ConfigDict, field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Configuración de la aplicación usando Pydantic Settings"""

    # Aplicación
    app_name: str = "Layered Torsion"
    app_version: str = "1.0.0"
    environment: str = "production"

    # Logging
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    # Datos
    data_path: str = "./data"

    # Cálculo
    max_workers: int = 4
    default_n: str = "both"
    default_method: str = "both"

    # Salida
    json_indent: int = 2

    model_config = ConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="allow",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Nivel de log desconocido: {v}")
        return level

    @field_validator("max_workers")
    @classmethod
    def validate_max_workers(cls, v: int) -> int:
        if v < 1:
            raise ValueError("max_workers debe ser al menos 1")
        return v


# Instancia global de configuración
settings = Settings()


def setup_logging(level: Optional[str] = None):
    """Configurar el sistema de logging usando loguru"""
    from loguru import logger

    # Remover el handler por defecto
    logger.remove()

    log_format = (
        "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | "
        "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> | "
        "<level>{message}</level>"
    )
    level = (level or settings.log_level).upper()

    # stdout queda para los reportes
    logger.add(
        sys.stderr,
        format=log_format,
        level=level,
        colorize=True,
        backtrace=True,
        diagnose=settings.environment == "development",
    )

    if settings.log_file:
        Path(settings.log_file).parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            settings.log_file,
            format=log_format,
            level=level,
            rotation="10 MB",
            retention="7 days",
            compression="zip",
            backtrace=True,
            diagnose=False,
        )

    return logger
