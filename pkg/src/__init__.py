"""
Layered Torsion - Paquete principal
"""

__version__ = "1.0.0"
__description__ = "Polinomios 1-loop y de torsión de triangulaciones en capas de fibrados sobre el círculo"
