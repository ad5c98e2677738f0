"""Carleson constants of disk measures, estimated from below.

Two estimators:

* ``box_constant`` scans Carleson boxes
  ``Q(theta0, h) = {r e^{it}: 1 - h <= r < 1, |t - theta0| <= h}`` and reports
  ``max m(Q) / h``. Heights are ``pi 2^-k`` plus the critical heights
  ``1 - |z|`` of every atom and ring, where the ratio jumps.
* ``embedding_constant`` tests the embedding inequality on weighted Szego
  kernels centred at the given points.

Both are lower bounds for the respective suprema; witnesses are returned so
the numbers are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circle import CircleGrid
from .exhaustions import DiskMeasure
from .validation import check_exponent
from .weights import Weight, outer_function, uniform_weight

__all__ = [
    "BoxResult",
    "EmbeddingResult",
    "CarlesonEstimate",
    "box_constant",
    "embedding_constant",
    "default_centers",
    "estimate_carleson",
]


@dataclass(frozen=True)
class BoxResult:
    constant: float
    theta0: float
    height: float


@dataclass(frozen=True)
class EmbeddingResult:
    constant: float
    center: complex | None


@dataclass(frozen=True)
class CarlesonEstimate:
    box_constant: float
    embedding_constant: float
    box_witness: tuple
    kernel_witness: complex | None


def _circular_distance(a, b):
    d = np.abs(np.subtract.outer(a, b)) % (2 * np.pi)
    return np.minimum(d, 2 * np.pi - d)


def box_constant(m: DiskMeasure, levels: int = 12, n_theta: int = 1024) -> BoxResult:
    """Largest ``m(Q) / h`` over the scanned boxes."""
    heights = {np.pi * 2.0**-k for k in range(1, levels + 1)}
    for atom in m.atoms:
        if 0 < abs(atom.point) < 1:
            heights.add(1 - abs(atom.point))
    for ring in m.rings:
        heights.add(1 - ring.radius)
    heights = np.array(sorted(heights))
    centers = 2 * np.pi * np.arange(n_theta) / n_theta
    atom_angles = np.array([np.angle(a.point) % (2 * np.pi) for a in m.atoms if a.point != 0])
    centers = np.concatenate([centers, atom_angles])

    # rings on the same grid share one distance table
    tables = {}
    for r in m.rings:
        if r.grid.n not in tables:
            tables[r.grid.n] = _circular_distance(centers, r.grid.nodes)
    atom_pts = np.array([a.point for a in m.atoms], dtype=complex)
    atom_mass = np.array([a.mass for a in m.atoms])
    atom_dist = _circular_distance(centers, np.angle(atom_pts) % (2 * np.pi))

    best = BoxResult(0.0, 0.0, float(heights[-1]))
    for h in heights:
        mass = np.zeros(centers.size)
        for n, dist in tables.items():
            density = sum(
                (r.density for r in m.rings if r.grid.n == n and r.radius >= 1 - h),
                np.zeros(n),
            )
            if density.any():
                mass += (dist <= h) @ density / n
        if atom_pts.size:
            radial = np.abs(atom_pts) >= 1 - h
            # the origin has no angle: it lies in a box once the box reaches r = 0
            angular = (atom_dist <= h) | (atom_pts == 0)[None, :]
            mass += (angular & radial[None, :]) @ atom_mass
        k = int(np.argmax(mass))
        ratio = float(mass[k] / h)
        if ratio > best.constant:
            best = BoxResult(ratio, float(centers[k]), float(h))
    return best


def default_centers(m: DiskMeasure | None = None, n_angles: int = 32):
    """Polar grid of kernel centres, plus the atom locations of ``m``."""
    radii = np.array([0.3, 0.5, 0.7, 0.8, 0.9, 0.95])
    ang = 2 * np.pi * np.arange(n_angles) / n_angles
    pts = [np.array([0j]), (radii[:, None] * np.exp(1j * ang)[None, :]).ravel()]
    if m is not None and m.atoms:
        pts.append(np.array([a.point for a in m.atoms]))
    return np.concatenate(pts)


def embedding_constant(
    m: DiskMeasure,
    w: Weight | None,
    p: float,
    centers,
    grid: CircleGrid | None = None,
) -> EmbeddingResult:
    """``sup_c int |k_c|^p dm / ||k_c||^p_{alpha,p}`` over the kernel centres ``c``."""
    p = check_exponent(p)
    centers = np.atleast_1d(np.asarray(centers, dtype=complex))
    if centers.size == 0:
        return EmbeddingResult(0.0, None)
    if w is None:
        w = uniform_weight(grid or CircleGrid(1024))
    a = outer_function(w)
    inv_sqrt_boundary = a.boundary_power(-0.5)
    bpts = w.grid.points

    def inv_sqrt(z):
        return a.power(-0.5, z)

    ring_pts = [ring.radius * ring.grid.points for ring in m.rings]
    ring_vals = [inv_sqrt(z) for z in ring_pts]
    atom_pts = np.array([at.point for at in m.atoms], dtype=complex)
    atom_vals = inv_sqrt(atom_pts) if atom_pts.size else atom_pts

    best = EmbeddingResult(0.0, None)
    for c in centers:
        # the constant factor conj(a^{-1/2}(c)) cancels in the ratio
        boundary = np.abs(inv_sqrt_boundary / (1 - np.conj(c) * bpts)) ** p
        denom = float(np.mean(boundary * w.values))
        num = 0.0
        for ring, z, val in zip(m.rings, ring_pts, ring_vals):
            num += np.mean(np.abs(val / (1 - np.conj(c) * z)) ** p * ring.density)
        if atom_pts.size:
            num += np.sum(
                np.abs(atom_vals / (1 - np.conj(c) * atom_pts)) ** p
                * np.array([at.mass for at in m.atoms])
            )
        ratio = float(num / denom)
        if ratio > best.constant:
            best = EmbeddingResult(ratio, complex(c))
    return best


def estimate_carleson(m: DiskMeasure, w: Weight | None = None, p: float = 2.0, centers=None):
    centers = default_centers(m) if centers is None else centers
    box = box_constant(m)
    emb = embedding_constant(m, w, p, centers)
    return CarlesonEstimate(box.constant, emb.constant, (box.theta0, box.height), emb.center)
