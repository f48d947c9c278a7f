#!/usr/bin/env python3
"""
Layered Torsion - Script de ejecución principal
"""

import sys
from pathlib import Path

# Agregar el directorio raíz al path
sys.path.insert(0, str(Path(__file__).parent))

from src.presentation.cli.main import main


if __name__ == "__main__":
    sys.exit(main())
