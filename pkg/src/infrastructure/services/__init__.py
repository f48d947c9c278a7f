"""
Services - Superficies, capas, asignaciones de Ptolemy y polinomios 1-loop
"""
