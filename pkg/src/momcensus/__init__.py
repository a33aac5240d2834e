"""Verified numerics and combinatorics for low-volume cusped hyperbolic
3-manifolds: horoball cusp diagrams, Mom structure detection, dipyramid
gluing censuses, and Dehn-filling volume bounds."""

__version__ = "0.1.0"

from .intervals import Interval, RigorousComplex
from .lobachevsky import ShapeSolution, ideal_tetra_volume, lobachevsky, triangulation_volume

__all__ = [
    "Interval",
    "RigorousComplex",
    "ShapeSolution",
    "ideal_tetra_volume",
    "lobachevsky",
    "triangulation_volume",
    "__version__",
]
