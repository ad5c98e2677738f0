"""Numerical toolkit for weighted Hardy spaces on the unit disk.

Boundary weights and their outer functions, exhaustion functions and their
Riesz measures, weighted norms computed from the boundary and from the
interior, distances to weighted H^2, Carleson constants, interpolation and a
two-function corona solver.
"""

from .circle import BoundarySamples, CircleGrid, FourierSeries, make_grid
from .corona import CoronaData, corona_solve, verify_corona
from .duality import dist_h2, dual_pairing
from .exhaustions import Atom, DiskMeasure, Exhaustion, Ring, boundary_weight, ring_exhaustion
from .functions import BlaschkeProduct, PowerSeries
from .interpolation import (
    InterpolationProblem,
    MinNormInterpolator,
    PointSequence,
    min_norm_interpolant,
    pick_min_norm,
)
from .norms import area_norm, boundary_norm
from .weights import OuterFunction, Weight, outer_function, validate_and_normalize

__version__ = "0.1.0"

__all__ = [
    "Atom",
    "BlaschkeProduct",
    "BoundarySamples",
    "CircleGrid",
    "CoronaData",
    "DiskMeasure",
    "Exhaustion",
    "FourierSeries",
    "InterpolationProblem",
    "MinNormInterpolator",
    "OuterFunction",
    "PointSequence",
    "PowerSeries",
    "Ring",
    "Weight",
    "area_norm",
    "boundary_norm",
    "boundary_weight",
    "corona_solve",
    "dist_h2",
    "dual_pairing",
    "make_grid",
    "min_norm_interpolant",
    "outer_function",
    "pick_min_norm",
    "ring_exhaustion",
    "validate_and_normalize",
    "verify_corona",
]
