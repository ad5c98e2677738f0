"""Concrete holomorphic functions on the disk.

Two representations cover everything the library needs: finite power series
and finite Blaschke products (optionally times a power series). Both evaluate
on arbitrary arrays of points and know their derivative.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = ["PowerSeries", "BlaschkeProduct", "fold_modes"]


def fold_modes(coeffs, n):
    """Fold power-series coefficients ``a_m`` (m >= 0) onto ``n`` residues.

    On the uniform grid ``exp(i m theta_k)`` depends only on ``m mod n``, so
    ``n * ifft`` of the folded array evaluates the series exactly at the nodes.
    Works along the last axis.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    size = coeffs.shape[-1]
    blocks = -(-size // n)
    padded = np.zeros(coeffs.shape[:-1] + (blocks * n,), dtype=complex)
    padded[..., :size] = coeffs
    return padded.reshape(coeffs.shape[:-1] + (blocks, n)).sum(axis=-2)


class PowerSeries:
    """``f(z) = sum_m coeffs[m] z^m`` with finitely many terms."""

    def __init__(self, coeffs):
        coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D sequence")
        self.coeffs = coeffs

    def __repr__(self):
        return f"PowerSeries(degree={self.degree})"

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return P.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def derivative(self) -> "PowerSeries":
        if self.degree == 0:
            return PowerSeries([0.0])
        return PowerSeries(P.polyder(self.coeffs))

    def boundary_values(self, n: int) -> np.ndarray:
        """Values at ``exp(2 pi i k / n)``, computed by FFT."""
        return np.fft.ifft(fold_modes(self.coeffs, n)) * n

    def coefficient_norm(self) -> float:
        """Sum of |coefficients|: a bound for sup |f| on the closed disk."""
        return float(np.sum(np.abs(self.coeffs)))

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other])
        return PowerSeries(P.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return PowerSeries(P.polymul(self.coeffs, other.coeffs))
        return PowerSeries(self.coeffs * other)

    __rmul__ = __mul__

    def zeros(self) -> np.ndarray:
        c = np.trim_zeros(self.coeffs, "b")
        if c.size <= 1:
            return np.empty(0, dtype=complex)
        return P.polyroots(c)


class BlaschkeProduct:
    """``c * prod_j (z - a_j) / (1 - conj(a_j) z)`` times an optional series."""

    def __init__(self, zeros, constant=1.0, factor: PowerSeries | None = None):
        zeros = np.atleast_1d(np.asarray(zeros, dtype=complex))
        if np.any(np.abs(zeros) >= 1):
            raise ValueError("Blaschke zeros must lie strictly inside the disk")
        constant = complex(constant)
        if abs(abs(constant) - 1) > 1e-12:
            raise ValueError("the Blaschke constant must be unimodular")
        self.zeros = zeros
        self.constant = constant
        self.factor = factor

    def __repr__(self):
        return f"BlaschkeProduct(n_zeros={self.zeros.size})"

    def _factors(self, z):
        z = np.asarray(z, dtype=complex)[..., None]
        a = self.zeros
        return (z - a) / (1 - np.conj(a) * z)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        value = self.constant * np.prod(self._factors(z), axis=-1)
        if self.factor is not None:
            value = value * self.factor(z)
        return value

    def derivative_values(self, z):
        """``B'(z)`` via the product rule (no division by B, safe at zeros)."""
        z = np.asarray(z, dtype=complex)
        b = self._factors(z)
        a = self.zeros
        db = (1 - np.abs(a) ** 2) / (1 - np.conj(a) * z[..., None]) ** 2
        total = np.zeros(z.shape, dtype=complex)
        for k in range(a.size):
            others = np.delete(b, k, axis=-1)
            total = total + db[..., k] * np.prod(others, axis=-1)
        total = self.constant * total
        if self.factor is None:
            return total
        base = self.constant * np.prod(b, axis=-1)
        return total * self.factor(z) + base * self.factor.derivative()(z)

    def derivative(self):
        return self.derivative_values


# either representation can be passed wherever an analytic function is expected
AnalyticFn = PowerSeries | BlaschkeProduct
