"""
Gauss-sum factorization: exact numerics, spin-echo simulation and CLI
"""

__version__ = "1.0.0"
