"""
Presentation - Capa de presentación (CLI)
"""
