"""
CLI - Línea de comandos
"""
