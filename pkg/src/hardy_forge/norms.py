"""Weighted Hardy norms computed two independent ways.

``boundary_norm`` integrates ``|f|^p`` against the boundary weight. ``area_norm``
uses only interior data of an exhaustion ``u``::

    ||f||^p = int |f|^p dm  -  int u * p^2 |f|^(p-2) |f'|^2 dA / (2 pi)

where ``m`` is the Riesz measure of ``u`` (Laplacian divided by 2 pi, so the
classical Laplacian ``p^2 |f|^(p-2) |f'|^2`` of ``|f|^p`` is paired with
``dA / (2 pi)``). Agreement of the two is the content of the norm identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .circle import CircleGrid
from .exhaustions import Exhaustion, boundary_weight, radial_sweep_measure
from .validation import check_exponent
from .weights import Weight, uniform_weight

__all__ = [
    "DiskQuadrature",
    "disk_quadrature",
    "AreaNormReport",
    "boundary_norm",
    "area_norm",
    "derivative_energy",
    "radial_mean_monotonicity",
    "CarlesonCheck",
    "carleson_identity_check",
    "lelong_jensen_check",
]

ZERO_GUARD = 1e-12


@dataclass(frozen=True, eq=False)
class DiskQuadrature:
    """Polar product rule for ``int_D F dA / (2 pi)``.

    Radial nodes are Gauss-Legendre on each segment between ``breaks``;
    ``weights`` already include the Jacobian ``rho``. The total measure of the
    disk under ``dA / (2 pi)`` is 1/2, checked at construction.
    """

    radii: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    n_angular: int
    breaks: tuple = ()

    def __post_init__(self):
        total = float(np.sum(self.weights))
        if abs(total - 0.5) > 1e-13:
            raise ValueError(f"disk quadrature total {total} differs from 1/2")

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_angular) / self.n_angular

    @property
    def points(self) -> np.ndarray:
        return self.radii[:, None] * np.exp(1j * self.angles)[None, :]

    def integrate(self, values) -> complex:
        values = np.asarray(values)
        return np.sum(self.weights * values.mean(axis=-1))


@lru_cache(maxsize=64)
def disk_quadrature(n_radial: int = 200, n_angular: int = 512, breaks=()) -> DiskQuadrature:
    """Build (and cache) a disk rule; ``breaks`` are radii where the integrand kinks."""
    edges = [0.0, *sorted(set(float(b) for b in breaks if 0 < b < 1)), 1.0]
    radii, weights = [], []
    for a, b in zip(edges, edges[1:]):
        count = max(16, int(round(n_radial * (b - a))))
        x, wx = np.polynomial.legendre.leggauss(count)
        rho = 0.5 * (b - a) * x + 0.5 * (b + a)
        radii.append(rho)
        weights.append(0.5 * (b - a) * wx * rho)
    return DiskQuadrature(
        np.concatenate(radii), np.concatenate(weights), n_angular, tuple(edges[1:-1])
    )


def boundary_norm(f, w: Weight | None, p: float, grid: CircleGrid | None = None) -> float:
    """``(int |f|^p alpha d lambda)^(1/p)`` on the weight's grid."""
    p = check_exponent(p)
    if w is None:
        w = uniform_weight(grid or CircleGrid(1024))
    values = np.abs(f(w.grid.points)) ** p
    return float(np.mean(values * w.values) ** (1 / p))


def _laplacian_density(f, fprime, z, p):
    """Classical Laplacian of ``|f|^p``: ``p^2 |f|^(p-2) |f'|^2``, zero-guarded."""
    fz = np.abs(f(z))
    dz = np.abs(fprime(z))
    if p >= 2:
        return p**2 * fz ** (p - 2) * dz**2, np.zeros(fz.shape, dtype=bool)
    masked = fz < ZERO_GUARD
    safe = np.where(masked, 1.0, fz)
    return np.where(masked, 0.0, p**2 * safe ** (p - 2) * dz**2), masked


@dataclass(frozen=True)
class AreaNormReport:
    value: float
    measure_term: float
    energy_term: float
    excluded_mass: float


def _energy_terms(f, e: Exhaustion, p, n_radial, n_angular):
    """``-int u Delta|f|^p`` split over the components of the Riesz measure."""
    active = e.active_caps()
    if active:
        raise ValueError(
            f"caps on rings {active} clip the potential; the area formula needs "
            "the Riesz measure of the capped function, which is not available"
        )
    fprime = f.derivative()
    energy = 0.0
    excluded = 0.0
    for ring in e.measure.rings:
        quad = disk_quadrature(n_radial, n_angular, (ring.radius,))
        lap, masked = _laplacian_density(f, fprime, quad.points, p)
        u = ring.potential_polar(quad.radii, n_angular)
        energy -= quad.integrate(u * lap)
        excluded = max(excluded, quad.integrate(masked))
    quad = disk_quadrature(n_radial, n_angular)
    wpts = quad.points
    for atom in e.measure.atoms:
        a = atom.point
        z = (wpts + a) / (1 + np.conj(a) * wpts)
        jac = ((1 - abs(a) ** 2) / np.abs(1 + np.conj(a) * wpts) ** 2) ** 2
        lap, masked = _laplacian_density(f, fprime, z, p)
        u = atom.mass * np.log(np.abs(wpts))
        energy -= quad.integrate(u * lap * jac)
        excluded = max(excluded, quad.integrate(masked * jac))
    return float(np.real(energy)), float(excluded)


def area_norm(f, e: Exhaustion, p: float, n_radial=200, n_angular=512, full=False):
    """Norm of ``f`` from interior data of ``e`` (Riesz measure and potential).

    Ring potentials have a radial kink on their circle, so each ring gets a
    quadrature with a break there; atom potentials are integrated after the
    disk automorphism that moves the atom to the origin. For ``p < 2`` nodes
    with ``|f| < 1e-12`` are dropped and their area is reported.
    """
    p = check_exponent(p, 1.0, inclusive=True)
    measure_term = float(np.real(e.measure.integrate(lambda z: np.abs(f(z)) ** p)))
    energy, excluded = _energy_terms(f, e, p, n_radial, n_angular)
    value = (measure_term + energy) ** (1 / p)
    if full:
        return AreaNormReport(value, measure_term, energy, excluded)
    return value


def derivative_energy(f, e: Exhaustion, p: float, n_radial=200, n_angular=512) -> float:
    """``int |u| p^2 |f|^(p-2) |f'|^2 dA / (2 pi)``, bounded by the boundary norm^p."""
    p = check_exponent(p, 1.0, inclusive=True)
    return _energy_terms(f, e, p, n_radial, n_angular)[0]


def radial_mean_monotonicity(f, e: Exhaustion, p: float, levels, grid=None) -> np.ndarray:
    """Sweep-measure integrals of ``|f|^p`` over the given (sorted) levels."""
    p = check_exponent(p)
    grid = grid or CircleGrid(1024)
    out = []
    for level in levels:
        sweep = radial_sweep_measure(e, level)
        circle_mean = np.mean(np.abs(f(sweep.radius * grid.points)) ** p)
        out.append(sweep.mass * circle_mean)
    return np.asarray(out)


@dataclass(frozen=True)
class CarlesonCheck:
    interior: float
    boundary: float
    ratio: float

    @property
    def passed(self) -> bool:
        return self.ratio <= 1 + 1e-9


def carleson_identity_check(f, e: Exhaustion, p: float, grid=None) -> CarlesonCheck:
    """Ratio ``int |f|^p dm / int |f|^p alpha_u`` for ``m`` the Riesz measure."""
    p = check_exponent(p)
    interior = float(np.real(e.measure.integrate(lambda z: np.abs(f(z)) ** p)))
    alpha = boundary_weight(e.measure, grid)
    boundary = boundary_norm(f, alpha, p) ** p
    return CarlesonCheck(interior, boundary, interior / boundary)


def lelong_jensen_check(f, level: float, n_radial=200, grid=None):
    """Both sides of the Jensen-type identity for ``u = log|z|`` and ``|f|^2``.

    Left: mean of ``|f|^2`` on ``|z| = e^level``. Right: ``|f(0)|^2`` plus
    ``int_{|z|<e^level} (level - log|z|) 4 |f'|^2 dA / (2 pi)``.
    """
    if not level < 0:
        raise ValueError("level must be negative")
    grid = grid or CircleGrid(1024)
    rho = np.exp(level)
    lhs = float(np.mean(np.abs(f(rho * grid.points)) ** 2))
    x, wx = np.polynomial.legendre.leggauss(n_radial)
    t = 0.5 * rho * (x + 1)
    wt = 0.5 * rho * wx * t
    fprime = f.derivative()
    pts = t[:, None] * grid.points[None, :]
    lap = 4 * np.abs(fprime(pts)) ** 2
    inner = np.sum(wt * ((level - np.log(t)) * lap.mean(axis=1)))
    rhs = float(np.abs(f(np.asarray([0j]))[0]) ** 2 + inner)
    return lhs, rhs
