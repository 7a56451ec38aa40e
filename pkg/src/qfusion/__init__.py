"""Exact symbolic computations in quantized enveloping algebras U_q(g)."""

__version__ = "0.1.0"

from .roots import RootData, Weight
from .scalars import Scalar, vz
from .uqg_core import UqAlgebra

__all__ = ["RootData", "Weight", "Scalar", "UqAlgebra", "vz", "__version__"]
