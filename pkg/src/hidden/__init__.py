"""Complex-domain reversible watermarking with homomorphic encryption."""

from .gaussian import GaussianInt, GModRing

__version__ = "0.1.0"
__all__ = ["GaussianInt", "GModRing"]
