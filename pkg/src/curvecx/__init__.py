"""Homology curve complexes of closed oriented surfaces, computed from normal
coordinates on a one-vertex triangulation."""

__version__ = "0.1.0"

from .errors import CurveComplexError
from .triangulation import Triangulation, euler_characteristic, standard_triangulation

__all__ = ["CurveComplexError", "Triangulation", "euler_characteristic",
           "standard_triangulation", "__version__"]
