"""High-order flux-splitting solvers for the Euler equations of gas dynamics."""

from .config import SchemeConfig
from .operator import BoundaryCondition, BoundarySet, Field, Grid
from .problems import make_problem, problem_ids
from .state import GasParams, Primitive

__all__ = [
    "BoundaryCondition",
    "BoundarySet",
    "Field",
    "GasParams",
    "Grid",
    "Primitive",
    "SchemeConfig",
    "make_problem",
    "problem_ids",
]
