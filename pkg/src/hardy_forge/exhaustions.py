"""Exhaustion functions described by their Riesz measure.

The Laplacian is normalized as (classical Laplacian) / (2 pi), so the Riesz
measure of ``log|z|`` is the unit atom at the origin and membership in E_1
means total mass one. Measures are finite sums of

* rings: a density on the circle ``|z| = r`` (mass = mean of the density),
* atoms: point masses.

The potential of each component is the Green potential of the disk,
``int log|(z - w) / (1 - conj(w) z)| dm(w)``, evaluated spectrally for rings.
A ring may carry a cap ``t < 0``, in which case its potential is replaced by
``max(potential, t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import bisect

from .circle import CircleGrid
from .functions import fold_modes
from .validation import check_disk_points
from .weights import Weight

__all__ = [
    "Ring",
    "Atom",
    "DiskMeasure",
    "Exhaustion",
    "SweepMeasure",
    "green_potential",
    "boundary_weight",
    "ring_exhaustion",
    "lsc_stack_to_exhaustion",
    "radial_sweep_measure",
    "poisson_kernel",
]


def poisson_kernel(z, theta):
    """``P(z, e^{i theta}) = (1 - |z|^2) / |e^{i theta} - z|^2`` (mean one)."""
    z = np.asarray(z, dtype=complex)
    return (1 - np.abs(z) ** 2) / np.abs(np.exp(1j * np.asarray(theta)) - z) ** 2


@dataclass(frozen=True, eq=False)
class Ring:
    radius: float
    grid: CircleGrid
    density: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 0 < self.radius < 1:
            raise ValueError(f"ring radius must lie in (0, 1), got {self.radius}")
        density = np.asarray(self.density, dtype=float)
        if density.shape != (self.grid.n,):
            raise ValueError(f"ring density needs {self.grid.n} samples")
        if np.any(density < 0) or not np.any(density > 0):
            raise ValueError("ring density must be >= 0 and not identically zero")
        object.__setattr__(self, "density", density)

    @property
    def mass(self) -> float:
        return float(self.density.mean())

    @property
    def is_radial(self) -> bool:
        d = self.density
        return bool(d.max() - d.min() <= 1e-12 * max(1.0, d.max()))

    def modes(self) -> np.ndarray:
        """Fourier coefficients for m = 0..n/2, Nyquist halved (symmetric split)."""
        n = self.grid.n
        c = np.fft.fft(self.density)[: n // 2 + 1] / n
        c[-1] *= 0.5
        return c

    def potential_coeffs(self, rho) -> np.ndarray:
        """Coefficients B_m(rho) with potential ``Re sum_m B_m e^{i m theta}``.

        Uses ``log|z - w| = log max - sum (1/m)(min/max)^m cos`` and
        ``log|1 - conj(w) z| = -sum (1/m)(r rho)^m cos``.
        """
        rho = np.atleast_1d(np.asarray(rho, dtype=float))[:, None]
        r = self.radius
        c = self.modes()
        m = np.arange(1, c.size)
        q = np.minimum(rho, r) / np.maximum(rho, r)
        B = np.empty((rho.shape[0], c.size), dtype=complex)
        B[:, 0] = c[0].real * np.log(np.maximum(rho[:, 0], r))
        B[:, 1:] = -(q**m - (r * rho) ** m) / m * c[1:]
        return B

    def potential_polar(self, rho, n_angular: int) -> np.ndarray:
        """Potential on the polar grid ``rho x (2 pi k / n_angular)``."""
        B = self.potential_coeffs(rho)
        folded = fold_modes(B, n_angular)
        return np.real(np.fft.ifft(folded, axis=1) * n_angular)

    def potential(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=float)
        for start in range(0, flat.size, 256):
            chunk = flat[start : start + 256]
            B = self.potential_coeffs(np.abs(chunk))
            phase = np.exp(1j * np.outer(np.angle(chunk), np.arange(B.shape[1])))
            out[start : start + 256] = np.real(np.sum(B * phase, axis=1))
        return out.reshape(z.shape)

    def smoothed_density(self) -> np.ndarray:
        """Poisson integral of the ring density evaluated on the unit circle."""
        m = np.abs(self.grid.modes)
        return np.real(np.fft.ifft(np.fft.fft(self.density) * self.radius**m))


@dataclass(frozen=True)
class Atom:
    point: complex
    mass: float

    def __post_init__(self):
        if not abs(self.point) < 1:
            raise ValueError("atoms must lie in the open disk")
        if not self.mass > 0:
            raise ValueError("atom mass must be positive")
        object.__setattr__(self, "point", complex(self.point))
        object.__setattr__(self, "mass", float(self.mass))

    def potential(self, z):
        z = np.asarray(z, dtype=complex)
        a = self.point
        with np.errstate(divide="ignore"):
            return self.mass * np.log(np.abs((z - a) / (1 - np.conj(a) * z)))


@dataclass(frozen=True, eq=False)
class DiskMeasure:
    rings: tuple = ()
    atoms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rings", tuple(self.rings))
        object.__setattr__(self, "atoms", tuple(self.atoms))

    @property
    def mass(self) -> float:
        return sum(r.mass for r in self.rings) + sum(a.mass for a in self.atoms)

    @property
    def is_empty(self) -> bool:
        return not self.rings and not self.atoms

    @property
    def is_radial(self) -> bool:
        return all(r.is_radial for r in self.rings) and all(
            a.point == 0 for a in self.atoms
        )

    def scaled(self, factor: float) -> "DiskMeasure":
        rings = [Ring(r.radius, r.grid, r.density * factor) for r in self.rings]
        atoms = [Atom(a.point, a.mass * factor) for a in self.atoms]
        return DiskMeasure(rings, atoms)

    def integrate(self, func) -> complex:
        """``int func dm`` with ``func`` a vectorized function of z."""
        total = 0.0
        for ring in self.rings:
            z = ring.radius * ring.grid.points
            total = total + np.mean(func(z) * ring.density)
        for atom in self.atoms:
            total = total + atom.mass * func(np.asarray([atom.point]))[0]
        return total


@dataclass(frozen=True, eq=False)
class Exhaustion:
    """Negative subharmonic exhaustion ``u`` given by its Riesz measure.

    ``caps`` holds one level (or None) per ring; ``remainder`` records the mass
    dropped when a layered construction is truncated.
    """

    measure: DiskMeasure
    caps: tuple | None = None
    remainder: float = 0.0

    def __post_init__(self):
        if self.measure.is_empty:
            raise ValueError("an exhaustion needs a non-empty Riesz measure")
        if self.caps is not None:
            caps = tuple(self.caps)
            if len(caps) != len(self.measure.rings):
                raise ValueError("need one cap entry per ring")
            if any(c is not None and not c < 0 for c in caps):
                raise ValueError("caps must be negative")
            object.__setattr__(self, "caps", caps)
        if self.measure.mass > 1 + 1e-9:
            raise ValueError(f"total Riesz mass {self.measure.mass} exceeds 1")

    @property
    def mass(self) -> float:
        return self.measure.mass

    @property
    def in_E1(self) -> bool:
        return abs(self.mass - 1) <= 1e-9

    def ring_caps(self):
        return self.caps if self.caps is not None else (None,) * len(self.measure.rings)

    def __call__(self, z):
        return green_potential(self.measure, z, self.caps)

    def active_caps(self) -> list[int]:
        """Indices of rings whose cap actually clips the potential.

        A ring potential is harmonic off its circle, so its minimum is attained
        on the circle; checking the circle values decides activity.
        """
        active = []
        for i, (ring, cap) in enumerate(zip(self.measure.rings, self.ring_caps())):
            if cap is None:
                continue
            on_ring = ring.potential_polar([ring.radius], ring.grid.n)
            if on_ring.min() < cap:
                active.append(i)
        return active

    def radial_profile(self, rho):
        """``u(rho)`` for a radial exhaustion."""
        rho = np.asarray(rho, dtype=float)
        u = np.zeros_like(rho)
        for ring, cap in zip(self.measure.rings, self.ring_caps()):
            with np.errstate(divide="ignore"):
                term = ring.mass * np.log(np.maximum(rho, ring.radius))
            u = u + (term if cap is None else np.maximum(term, cap))
        for atom in self.measure.atoms:
            with np.errstate(divide="ignore"):
                u = u + atom.mass * np.log(rho)
        return u


def green_potential(m: DiskMeasure, z, caps=None):
    """Evaluate the Green potential of ``m`` at points of the open disk.

    Points that coincide with an atom return ``-inf``.
    """
    z = check_disk_points(z, closed=False)
    caps = caps if caps is not None else (None,) * len(m.rings)
    u = np.zeros(z.shape, dtype=float)
    for ring, cap in zip(m.rings, caps):
        term = ring.potential(z)
        u = u + (term if cap is None else np.maximum(term, cap))
    for atom in m.atoms:
        u = u + atom.potential(z)
    return u


def boundary_weight(m: DiskMeasure, grid: CircleGrid | None = None) -> Weight:
    """Boundary density ``alpha(theta) = int P(z, e^{i theta}) dm(z)``."""
    if m.is_empty:
        raise ValueError("boundary weight of an empty measure")
    if grid is None:
        grid = m.rings[0].grid if m.rings else CircleGrid(1024)
    alpha = np.zeros(grid.n)
    for ring in m.rings:
        if ring.grid.n != grid.n:
            raise ValueError("ring density grid differs from the output grid")
        alpha += ring.smoothed_density()
    for atom in m.atoms:
        alpha += atom.mass * poisson_kernel(atom.point, grid.nodes)
    return Weight(grid, alpha)


def ring_exhaustion(w: Weight, r: float) -> Exhaustion:
    """Single-ring exhaustion with density ``alpha`` on ``|z| = r``.

    Its boundary weight is the Poisson smoothing of ``alpha`` at radius ``r``.
    """
    if not 0 < r < 1:
        raise ValueError(f"ring radius must lie in (0, 1), got {r}")
    if abs(w.mass - 1) > 1e-9:
        raise ValueError(f"ring exhaustion needs a mass-1 weight, got {w.mass}")
    return Exhaustion(DiskMeasure([Ring(r, w.grid, w.values)]))


def lsc_stack_to_exhaustion(stack, radii=None, normalize=True) -> Exhaustion:
    """Layered exhaustion from an increasing stack of continuous weights.

    Layer ``j`` carries the increment ``alpha_j - alpha_{j-1}`` on the ring
    ``r_j`` (default ``1 - 2^{-j-1}``), capped at ``-2^{-j}``. With
    ``normalize`` the last layer is rescaled so the total mass is exactly one
    and the dropped mass is stored as ``remainder``; otherwise a mass mismatch
    above 1e-9 is an error.
    """
    if not stack:
        raise ValueError("empty stack")
    values = [np.asarray(getattr(a, "values", a), dtype=float) for a in stack]
    grid = stack[0].grid if isinstance(stack[0], Weight) else CircleGrid(values[0].size)
    J = len(values)
    if radii is None:
        radii = [1 - 2.0 ** (-j - 1) for j in range(1, J + 1)]
    radii = list(radii)
    if len(radii) != J or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing, one per layer")
    layers = []
    prev = np.zeros(grid.n)
    for j, cur in enumerate(values, start=1):
        beta = cur - prev
        if beta.min() <= 0:
            raise ValueError(f"stack is not strictly increasing at layer {j}")
        layers.append(beta)
        prev = cur
    total = float(sum(b.mean() for b in layers))
    remainder = 1.0 - total
    if normalize:
        head = total - layers[-1].mean()
        if head >= 1:
            raise ValueError("layers below the last already carry mass >= 1")
        layers[-1] = layers[-1] * ((1 - head) / layers[-1].mean())
    elif abs(remainder) > 1e-9:
        raise ValueError(f"stack mass {total} differs from 1 by {remainder:.3g}")
    rings = [Ring(r, grid, b) for r, b in zip(radii, layers)]
    caps = tuple(-(2.0**-j) for j in range(1, J + 1))
    return Exhaustion(DiskMeasure(rings), caps=caps, remainder=remainder)


class SweepMeasure(NamedTuple):
    radius: float
    mass: float


def radial_sweep_measure(e: Exhaustion, level: float) -> SweepMeasure:
    """Level circle ``{u = level}`` and the mass of the sweep measure on it.

    For radial ``u`` the sweep measure is uniform on the level circle and its
    mass equals the Riesz mass enclosed by that circle.
    """
    if not e.measure.is_radial:
        raise ValueError("sweep measures are only available for radial exhaustions")
    if not level < 0:
        raise ValueError("level must be negative")
    has_atom = bool(e.measure.atoms)
    floor = -np.inf if has_atom else float(e.radial_profile(0.0))
    if level <= floor:
        raise ValueError(f"level {level} is not above min u = {floor}")
    lo = 0.0
    if has_atom:
        lo = 1e-300
        while e.radial_profile(lo) >= level:
            lo *= 1e-300
            if lo == 0:
                raise ValueError("could not bracket the level set")
    rho = bisect(lambda t: e.radial_profile(t) - level, lo, 1.0, xtol=1e-12)
    mass = sum(a.mass for a in e.measure.atoms)
    for ring, cap in zip(e.measure.rings, e.ring_caps()):
        support = ring.radius
        if cap is not None and ring.mass * np.log(ring.radius) < cap:
            support = float(np.exp(cap / ring.mass))
        if support < rho:
            mass += ring.mass
    return SweepMeasure(float(rho), float(mass))
