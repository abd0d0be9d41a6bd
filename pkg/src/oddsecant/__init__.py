"""Odd secants of point sets in finite projective planes."""

from .errors import OddSecantError
from .field import GF, FieldElement, field
from .plane import Plane, Point, Line, plane_for
from .secants import PointSet, classify, secant_profile, weights

__all__ = [
    "GF", "FieldElement", "Line", "OddSecantError", "Plane", "Point", "PointSet",
    "classify", "field", "plane_for", "secant_profile", "weights",
]
__version__ = "0.1.0"
