"""
lelong_lab - Números de Lelong y exponentes de singularidad de funciones psh
"""

__version__ = "1.0.0"
