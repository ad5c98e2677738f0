"""Boundary weights and their outer functions.

A weight is a strictly positive density on the circle, sampled on a
``CircleGrid``. Its outer function ``a = exp(h + i g)`` is built from the
Herglotz extension of ``log alpha``; with ``g(0) = 0`` the value ``a(0)`` is real
and positive. Fractional powers ``a**(1/p)`` are taken as
``exp(log_series / p)``, which is single valued because ``a`` is constructed as an
exponential.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle import BoundarySamples, CircleGrid, herglotz_extend
from .functions import PowerSeries
from .validation import check_disk_points, check_exponent, check_positive_samples

__all__ = [
    "Weight",
    "OuterFunction",
    "validate_and_normalize",
    "outer_function",
    "outer_power",
    "random_weight_family",
    "uniform_weight",
    "weighted_szego_kernel",
]


@dataclass(frozen=True, eq=False)
class Weight:
    """Strictly positive samples of a boundary density.

    ``lower_bound`` is the minimal sample and ``mass`` the integral against the
    normalized arc length.
    """

    grid: CircleGrid
    values: np.ndarray = field(repr=False)
    lower_bound: float = field(init=False)
    mass: float = field(init=False)

    def __post_init__(self):
        values = check_positive_samples(self.values)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got {values.shape}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "lower_bound", float(values.min()))
        object.__setattr__(self, "mass", float(values.mean()))

    @property
    def samples(self) -> BoundarySamples:
        return BoundarySamples(self.grid, self.values)

    def normalized(self) -> "Weight":
        return Weight(self.grid, self.values / self.mass)

    def __repr__(self):
        return (
            f"Weight(n={self.grid.n}, lower_bound={self.lower_bound:.6g}, "
            f"mass={self.mass:.6g})"
        )


def uniform_weight(grid: CircleGrid) -> Weight:
    return Weight(grid, np.ones(grid.n))


def validate_and_normalize(raw, grid: CircleGrid | None = None, normalize=False) -> Weight:
    """Build a ``Weight`` from raw positive samples, optionally rescaled to mass 1.

    ``raw`` may be ``BoundarySamples`` or a bare array (then ``grid`` is inferred
    from its length).
    """
    if isinstance(raw, BoundarySamples):
        grid, values = raw.grid, raw.values
    else:
        values = np.asarray(raw)
        if grid is None:
            grid = CircleGrid(values.size)
    w = Weight(grid, values)
    return w.normalized() if normalize else w


@dataclass(frozen=True, eq=False)
class OuterFunction:
    """Zero-free ``a(z) = exp(log_series(z))`` with ``|a| = alpha`` on the circle."""

    log_series: PowerSeries
    weight: Weight

    def __call__(self, z):
        return np.exp(self.log_series(z))

    def power(self, exponent, z):
        return np.exp(exponent * self.log_series(z))

    def boundary_log(self) -> np.ndarray:
        return self.log_series.boundary_values(self.weight.grid.n)

    def boundary_power(self, exponent) -> np.ndarray:
        """``a**exponent`` at the grid nodes of the source weight."""
        return np.exp(exponent * self.boundary_log())

    @property
    def at_origin(self) -> float:
        return float(np.exp(self.log_series.coeffs[0].real))


def outer_function(w: Weight, degree: int | None = None) -> OuterFunction:
    """Outer function of ``w``; the default degree is the full grid resolution."""
    log_alpha = BoundarySamples(w.grid, np.log(w.values))
    return OuterFunction(herglotz_extend(log_alpha, degree), w)


def outer_power(a: OuterFunction, exponent: float, z):
    """``a(z)**exponent`` on the closed disk, as ``exp(exponent * log a(z))``."""
    check_exponent(exponent)
    z = check_disk_points(z, closed=True)
    return a.power(exponent, z)


def random_weight_family(
    count: int,
    degree: int,
    floor: float,
    seed=None,
    grid: CircleGrid | None = None,
    amplitude: float = 0.6,
) -> list[Weight]:
    """``count`` weights ``max(floor, trig polynomial)`` normalized to mass 1.

    Each polynomial is ``1 + sum_{m=1}^{degree} (a_m cos m t + b_m sin m t)`` with
    Gaussian coefficients of scale ``amplitude / m``; the same seed always gives
    the same family.
    """
    if floor <= 0:
        raise ValueError("floor must be positive")
    grid = grid or CircleGrid(1024)
    if degree >= grid.n // 2:
        raise ValueError("degree must be below n/2")
    rng = np.random.default_rng(seed)
    theta = grid.nodes
    m = np.arange(1, degree + 1)
    family = []
    for _ in range(count):
        a, b = rng.normal(size=(2, degree)) * (amplitude / np.maximum(m, 1))
        poly = 1.0 + np.cos(np.outer(theta, m)) @ a + np.sin(np.outer(theta, m)) @ b
        family.append(Weight(grid, np.maximum(floor, poly)).normalized())
    return family


def weighted_szego_kernel(w, z, zeta, outer: OuterFunction | None = None):
    """Reproducing kernel of the weighted H^2 space at ``(z, zeta)``.

    ``k(z, zeta) = 1 / ((1 - conj(zeta) z) a^{1/2}(z) conj(a^{1/2}(zeta)))``;
    broadcasting over ``z`` and ``zeta`` follows numpy rules.
    """
    a = outer or outer_function(w)
    z = check_disk_points(z, closed=True)
    zeta = check_disk_points(zeta)
    return 1.0 / (
        (1 - np.conj(zeta) * z) * a.power(0.5, z) * np.conj(a.power(0.5, zeta))
    )
