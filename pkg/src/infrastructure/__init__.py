"""
Infrastructure - Servicios de cálculo sobre triangulaciones
"""
