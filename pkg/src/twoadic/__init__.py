"""Binary sequences from 2-adic integers and power series over F_2, with
exact Nth 2-adic complexity and linear complexity profiles."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
