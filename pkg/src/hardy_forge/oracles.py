"""Independent reference computations.

Each function here takes a route that does not share code with the method it
checks: least squares instead of the outer-function isometry, generalized
eigenvalues instead of Pick bisection, closed forms where they exist.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg

from .circle import BoundarySamples
from .weights import Weight

__all__ = [
    "lstsq_distance",
    "pick_generalized_eig",
    "two_point_min_norm",
    "outer_closed_form",
]


def lstsq_distance(phi: BoundarySamples, w: Weight, degree: int = 40) -> float:
    """``min_c ||phi - sum_{k <= degree} c_k z^k||_{alpha,2}`` by weighted least squares."""
    pts = phi.grid.points
    V = pts[:, None] ** np.arange(degree + 1)[None, :]
    sw = np.sqrt(w.values)[:, None]
    c, *_ = np.linalg.lstsq(sw * V, sw[:, 0] * phi.values, rcond=None)
    res = phi.values - V @ c
    return float(np.sqrt(np.mean(np.abs(res) ** 2 * w.values)))


def pick_generalized_eig(points, targets) -> float:
    """``R*`` as the square root of the top eigenvalue of ``(S K S^H, K)``."""
    z = np.asarray(points, dtype=complex)
    s = np.asarray(targets, dtype=complex)
    K = 1 / (1 - z[:, None] * np.conj(z[None, :]))
    A = s[:, None] * K * np.conj(s[None, :])
    top = linalg.eigh(A, K, eigvals_only=True)[-1]
    return float(np.sqrt(max(top, 0.0)))


def two_point_min_norm(r: float, s: complex) -> float:
    """Unweighted minimal H^2 norm for data ``f(0) = 0, f(r) = s``: ``|s| sqrt(1 - r^2) / r``."""
    return abs(s) * np.sqrt(1 - r**2) / r


def outer_closed_form(z):
    """Outer function of ``(5 + 4 cos theta) / 5``: ``(2 + z)^2 / 5``."""
    return (2 + np.asarray(z, dtype=complex)) ** 2 / 5
