"""Verification-grade q-Euler numbers, multiple q-zeta and q-l functions."""
from .characters import DirichletCharacter, character_from_table, quadratic_character
from .qcore import ApproxScalar, QContext

__version__ = "0.1.0"

__all__ = [
    "ApproxScalar", "QContext",
    "DirichletCharacter", "character_from_table", "quadratic_character",
    "__version__",
]
