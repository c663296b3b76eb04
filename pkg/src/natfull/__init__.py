"""Natural fullness of module and comodule functors over finite-dimensional F_p-algebras."""

from .exactla import BACKEND, PrimeField

__version__ = "0.1.0"

__all__ = ["BACKEND", "PrimeField", "__version__"]
