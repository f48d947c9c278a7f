"""
Core - Configuración, modelos, errores y álgebra exacta
"""
