"""Distance to weighted Hardy spaces through the outer-function isometry.

Multiplication by ``a^{1/p}`` maps the weighted space isometrically onto the
unweighted one, so for ``p = 2`` the distance and the best approximant come from
the analytic projection of ``a^{1/2} phi``. For other exponents only the dual
pairing is available, which certifies lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circle import BoundarySamples, riesz_project, to_fourier
from .functions import PowerSeries
from .validation import check_exponent
from .weights import OuterFunction, Weight, outer_function

__all__ = [
    "DistanceResult",
    "apply_Ap",
    "dist_h2",
    "dual_pairing",
    "dual_lower_bound",
    "dual_sup_polynomial",
    "conjugate_exponent",
]


def conjugate_exponent(p: float) -> float:
    p = check_exponent(p, 1.0)
    return p / (p - 1)


def _outer(w, outer):
    return outer if outer is not None else outer_function(w)


def apply_Ap(f: BoundarySamples, w: Weight, p: float, outer: OuterFunction | None = None):
    """``A_p f = a^{1/p} f`` on the circle grid."""
    p = check_exponent(p)
    a = _outer(w, outer)
    if f.grid.n != w.grid.n:
        raise ValueError("samples and weight live on different grids")
    return BoundarySamples(f.grid, a.boundary_power(1 / p) * f.values)


@dataclass(frozen=True, eq=False)
class DistanceResult:
    distance: float
    best_approximant: PowerSeries
    residual_samples: BoundarySamples = field(repr=False)
    projection_norm: float
    total_norm: float
    leakage: float

    @property
    def pythagoras_defect(self) -> float:
        return abs(self.distance**2 + self.projection_norm**2 - self.total_norm**2)


def dist_h2(phi: BoundarySamples, w: Weight, outer: OuterFunction | None = None) -> DistanceResult:
    """Distance from ``phi`` to the weighted H^2 and the nearest element.

    ``leakage`` is the L^2 size of the negative Fourier modes of
    ``a^{-1/2} P(a^{1/2} phi)`` on the grid; it measures how much of the best
    approximant is lost to the finite resolution.
    """
    a = _outer(w, outer)
    F = apply_Ap(phi, w, 2, a)
    F_hat = to_fourier(F)
    PF = to_fourier(riesz_project(F_hat), "inverse")
    residual = F.values - PF.values
    distance = float(np.sqrt(np.mean(np.abs(residual) ** 2)))
    h_samples = a.boundary_power(-0.5) * PF.values
    h_hat = np.fft.fft(h_samples) / phi.grid.n
    modes = phi.grid.modes
    order = np.argsort(modes)
    nonneg = order[modes[order] >= 0]
    leakage = float(np.sqrt(np.sum(np.abs(h_hat[modes < 0]) ** 2)))
    return DistanceResult(
        distance=distance,
        best_approximant=PowerSeries(h_hat[nonneg]),
        residual_samples=BoundarySamples(phi.grid, phi.values - h_samples),
        projection_norm=float(np.sqrt(np.mean(np.abs(PF.values) ** 2))),
        total_norm=float(np.sqrt(np.mean(np.abs(F.values) ** 2))),
        leakage=leakage,
    )


def dual_pairing(phi: BoundarySamples, g, w: Weight, outer: OuterFunction | None = None) -> complex:
    """``int phi a e^{i theta} g d lambda``; vanishes when ``phi`` is analytic."""
    a = _outer(w, outer)
    pts = phi.grid.points
    gz = g(pts) if callable(g) else np.asarray(g)
    return complex(np.mean(phi.values * a.boundary_power(1.0) * pts * gz))


def dual_lower_bound(phi: BoundarySamples, g, w: Weight, p: float, outer=None) -> float:
    """Hoelder certificate ``|pairing| / ||g||_{alpha,q} <= dist(phi, H^p_alpha)``."""
    q = conjugate_exponent(p)
    gz = g(phi.grid.points) if callable(g) else np.asarray(g)
    gnorm = np.mean(np.abs(gz) ** q * w.values) ** (1 / q)
    if gnorm == 0:
        return 0.0
    return abs(dual_pairing(phi, gz, w, outer)) / gnorm


def dual_sup_polynomial(phi: BoundarySamples, w: Weight, degree: int, outer=None):
    """Maximize ``|pairing(g)|`` over polynomials of the given degree with unit norm.

    With ``l_k = pairing(z^k)`` and the weighted Gram matrix ``G`` the maximum
    is ``sqrt(v^H G^{-1} v)`` for ``v = conj(l)``. Returns ``(value, g)``.
    """
    a = _outer(w, outer)
    pts = phi.grid.points
    powers = pts[:, None] ** np.arange(degree + 1)[None, :]
    kernel = phi.values * a.boundary_power(1.0) * pts
    l = np.mean(kernel[:, None] * powers, axis=0)
    G = (powers.conj().T * w.values) @ powers / phi.grid.n
    v = np.conj(l)
    x = np.linalg.solve(G, v)
    value = float(np.sqrt(np.real(np.vdot(v, x))))
    g = PowerSeries(x / value) if value > 0 else PowerSeries(np.zeros(degree + 1))
    return value, g
