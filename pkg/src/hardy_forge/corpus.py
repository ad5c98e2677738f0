"""Seeded random test objects shared by the verify suite and the tests."""

from __future__ import annotations

import numpy as np

from .circle import CircleGrid
from .exhaustions import Atom, DiskMeasure, Exhaustion, Ring, lsc_stack_to_exhaustion
from .functions import PowerSeries
from .weights import Weight

__all__ = [
    "random_polynomial",
    "random_trig_density",
    "random_exhaustion",
    "random_radial_exhaustion",
    "norm_corpus",
]

KINDS = ("atom", "ring", "stack")


def random_polynomial(rng, degree: int, zero_free: bool = False) -> PowerSeries:
    """Gaussian complex coefficients; ``zero_free`` makes the constant term dominate."""
    c = (rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)) / np.sqrt(2)
    if zero_free:
        c[1:] *= 0.3 / max(np.sum(np.abs(c[1:])), 1e-300)
        c[0] = 1.0 + 0.5 * rng.random()
    return PowerSeries(c)


def random_trig_density(rng, grid: CircleGrid, degree: int = 4, amplitude: float = 0.5):
    """Positive trig polynomial with mean 1 (coefficients bounded so it stays >= 1/2)."""
    theta = grid.nodes
    m = np.arange(1, degree + 1)
    a, b = rng.uniform(-1, 1, size=(2, degree))
    scale = amplitude / (np.sum(np.abs(a)) + np.sum(np.abs(b)))
    return 1.0 + scale * (np.cos(np.outer(theta, m)) @ a + np.sin(np.outer(theta, m)) @ b)


def random_exhaustion(rng, kind: str, grid: CircleGrid | None = None) -> Exhaustion:
    """Mass-one exhaustion of the given kind: ``atom``, ``ring`` or 3-layer ``stack``."""
    grid = grid or CircleGrid(1024)
    if kind == "atom":
        z = 0.7 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        return Exhaustion(DiskMeasure(atoms=[Atom(complex(z), 1.0)]))
    if kind == "ring":
        r = rng.uniform(0.3, 0.9)
        return Exhaustion(DiskMeasure([Ring(r, grid, random_trig_density(rng, grid))]))
    if kind == "stack":
        layers = [random_trig_density(rng, grid) / 3 for _ in range(3)]
        stack = [Weight(grid, v) for v in np.cumsum(layers, axis=0)]
        return lsc_stack_to_exhaustion(stack, radii=[0.75, 0.875, 0.9375])
    raise ValueError(f"unknown exhaustion kind {kind!r}")


def random_radial_exhaustion(rng, grid: CircleGrid | None = None) -> Exhaustion:
    """Radial exhaustion: up to three uniform rings and possibly an atom at 0."""
    grid = grid or CircleGrid(256)
    count = int(rng.integers(1, 4))
    weights = rng.random(count + 1)
    if rng.random() < 0.5:
        weights[-1] = 0.0
    weights /= weights.sum()
    radii = np.sort(rng.uniform(0.1, 0.95, size=count))
    rings = [Ring(float(r), grid, np.full(grid.n, w)) for r, w in zip(radii, weights[:-1])]
    atoms = [Atom(0j, float(weights[-1]))] if weights[-1] > 0 else []
    return Exhaustion(DiskMeasure(rings, atoms))


def norm_corpus(seed: int = 0, count: int = 30, grid: CircleGrid | None = None):
    """``(f, exhaustion, p)`` triples cycling through kinds and ``p`` in (1, 2, 4).

    For ``p = 1`` the polynomial is zero-free: ``|f|`` is then smooth and the
    area integrand has no ``1/|f|`` singularity that the quadrature would miss.
    """
    rng = np.random.default_rng(seed)
    grid = grid or CircleGrid(1024)
    out = []
    for i in range(count):
        kind = KINDS[i % 3]
        p = (1, 2, 4)[(i // 3) % 3]
        degree = int(rng.integers(1, 9))
        f = random_polynomial(rng, degree, zero_free=(p == 1))
        out.append((f, random_exhaustion(rng, kind, grid), p))
    return out
