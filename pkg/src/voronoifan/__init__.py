"""Exact computations on perfect quadratic forms and the perfect cone fan."""
from .kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
