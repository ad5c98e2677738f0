"""Spectral calculus on the unit circle.

Everything here works with the normalized arc-length measure, so the circle
has total mass one and ``circle_integral`` is the plain sample mean. Fourier
coefficients use the same normalization::

    c_m = (1/n) sum_k s(theta_k) exp(-i m theta_k),   -n/2 < m <= n/2

The Nyquist mode ``m = n/2`` is kept and treated symmetrically in the
Herglotz/Poisson extensions (its coefficient is not doubled), which makes the
real part of the extension reproduce the samples exactly on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .functions import PowerSeries, fold_modes
from .validation import check_disk_points, check_grid_size

__all__ = [
    "CircleGrid",
    "BoundarySamples",
    "FourierSeries",
    "make_grid",
    "to_fourier",
    "poisson_extend",
    "herglotz_extend",
    "riesz_project",
    "circle_integral",
    "fold_modes",
]


@dataclass(frozen=True)
class CircleGrid:
    """Uniform grid ``theta_k = 2 pi k / n`` on the circle."""

    n: int

    def __post_init__(self):
        check_grid_size(self.n)

    @property
    def nodes(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n) / self.n

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.nodes)

    @property
    def modes(self) -> np.ndarray:
        """Integer mode numbers in FFT order, Nyquist mode reported as +n/2."""
        m = np.fft.fftfreq(self.n, 1.0 / self.n).astype(int)
        m[self.n // 2] = self.n // 2
        return m


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    grid: CircleGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} samples, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, func, grid: CircleGrid) -> "BoundarySamples":
        """Sample ``func(z)`` at the grid points ``exp(i theta_k)``."""
        return cls(grid, np.asarray(func(grid.points)))

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values) or bool(
            np.all(self.values.imag == 0)
        )

    def __mul__(self, other):
        if isinstance(other, BoundarySamples):
            other = other.values
        return BoundarySamples(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, BoundarySamples):
            other = other.values
        return BoundarySamples(self.grid, self.values + other)

    def __sub__(self, other):
        if isinstance(other, BoundarySamples):
            other = other.values
        return BoundarySamples(self.grid, self.values - other)

    def __abs__(self):
        return BoundarySamples(self.grid, np.abs(self.values))


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Discrete Fourier coefficients stored in FFT order."""

    grid: CircleGrid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.grid.n,):
            raise ValueError(
                f"expected {self.grid.n} coefficients, got shape {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def modes(self) -> np.ndarray:
        return self.grid.modes

    def coeff(self, m: int) -> complex:
        n = self.grid.n
        if not -n // 2 < m <= n // 2:
            raise IndexError(f"mode {m} outside (-{n // 2}, {n // 2}]")
        return complex(self.coeffs[m % n])


def make_grid(n: int = 1024) -> CircleGrid:
    return CircleGrid(n)


def to_fourier(s, direction: str = "forward"):
    """Forward (samples -> coefficients) or inverse discrete transform."""
    if direction == "forward":
        if not isinstance(s, BoundarySamples):
            raise TypeError("forward transform expects BoundarySamples")
        return FourierSeries(s.grid, np.fft.fft(s.values) / s.grid.n)
    if direction == "inverse":
        if not isinstance(s, FourierSeries):
            raise TypeError("inverse transform expects FourierSeries")
        values = np.fft.ifft(s.coeffs) * s.grid.n
        return BoundarySamples(s.grid, values)
    raise ValueError(f"unknown direction {direction!r}")


def _real_samples(s: BoundarySamples) -> np.ndarray:
    if not s.is_real:
        raise ValueError("expected real boundary samples")
    return np.real(s.values).astype(float)


def herglotz_extend(s: BoundarySamples, degree: int | None = None) -> PowerSeries:
    """Holomorphic ``h + i g`` with ``Re = s`` on the circle and ``g(0) = 0``.

    Returns the power series ``c_0 + 2 sum_{m=1}^{M} c_m z^m``. With
    ``degree = n/2`` the Nyquist coefficient enters undoubled, so the real
    part matches the samples exactly at the grid nodes.
    """
    n = s.grid.n
    nyq = n // 2
    if degree is None:
        degree = nyq
    if not 0 <= degree <= nyq:
        raise ValueError(f"degree must lie in [0, {nyq}], got {degree}")
    c = np.fft.fft(_real_samples(s)) / n
    coeffs = np.empty(degree + 1, dtype=complex)
    coeffs[0] = c[0].real
    coeffs[1:] = 2 * c[1 : degree + 1]
    if degree == nyq:
        coeffs[nyq] = c[nyq].real
    return PowerSeries(coeffs)


def poisson_extend(s: BoundarySamples, z):
    """Harmonic extension of real samples, ``sum c_m r^|m| e^{i m theta}``."""
    z = check_disk_points(z, closed=False)
    return herglotz_extend(s)(z).real


def riesz_project(f: FourierSeries) -> FourierSeries:
    """Analytic projection: zero every coefficient with negative mode."""
    coeffs = np.where(f.modes < 0, 0, f.coeffs)
    return FourierSeries(f.grid, coeffs)


def circle_integral(s: BoundarySamples):
    """``int s d(lambda)`` by the equal-weight rule (exact below degree n)."""
    value = np.mean(s.values)
    return complex(value) if np.iscomplexobj(value) else float(value)
