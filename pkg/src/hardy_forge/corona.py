"""Two-function corona solver through a d-bar correction.

Given polynomials ``f1, f2`` with ``|f1|^2 + |f2|^2 >= delta`` on the closed disk:

* ``phi_j = conj(f_j) / S`` with ``S = |f1|^2 + |f2|^2`` solve the Bezout
  identity smoothly.
* ``psi = conj(f1 f2' - f2 f1') / S^2``: this is ``dbar phi_2 / f1`` and
  ``-dbar phi_1 / f2``, obtained by differentiating ``conj(f2) / S``.
* ``Psi`` is the Cauchy transform of ``psi`` (``dbar Psi = psi``).
* ``v = Psi - h`` where ``h`` is the best weighted-H^2 approximant of the
  boundary trace of ``Psi``; ``g1 = phi1 + f2 v`` and ``g2 = phi2 - f1 v`` are
  then holomorphic and still satisfy ``f1 g1 + f2 g2 = 1``.

The Cauchy transform ``-(1/pi) int psi(zeta) / (zeta - z) dA`` is computed
mode by mode in polar coordinates. Writing ``psi = sum_k psi_k(t) e^{ik phi}``
and ``Psi = sum_m Psi_m(rho) e^{im theta}``::

    Psi_m(rho) = -2 int_rho^1 (rho/t)^m psi_{m+1}(t) dt        (m >= 0)
    Psi_m(rho) =  2 int_0^rho (t/rho)^|m| psi_{m+1}(t) dt      (m <= -1)

so the kernel singularity never has to be sampled. At ``rho = 1`` only the
negative modes survive, as they must for the trace of a Cauchy transform.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .carleson import box_constant
from .circle import BoundarySamples, CircleGrid
from .duality import DistanceResult, dist_h2
from .exhaustions import DiskMeasure, Ring
from .functions import PowerSeries
from .norms import disk_quadrature
from .weights import Weight, outer_function, uniform_weight

__all__ = [
    "CoronaData",
    "CauchyTransform",
    "CoronaSolution",
    "CoronaReport",
    "certify_delta",
    "smooth_solution",
    "dbar_data",
    "dbar_cross_check",
    "cauchy_transform",
    "wirtinger_dbar",
    "corona_solve",
    "verify_corona",
    "psi_box_constant",
    "random_corona_data",
]

ROOT_MARGIN = 1e-3


def _series(f) -> PowerSeries:
    return f if isinstance(f, PowerSeries) else PowerSeries(f)


def certify_delta(f1: PowerSeries, f2: PowerSeries, n_radial: int = 1000, n_angular: int = 4096):
    """Lower bound for ``S = |f1|^2 + |f2|^2`` on the closed disk.

    ``S`` is scanned on a polar grid whose points are within ``dr/2 + dtheta/2``
    of every point of the disk, and ``|grad S| <= 2 sum A(f_j) A(f_j')`` with
    ``A`` the coefficient l1 norm. Returns ``(certified, grid_minimum)``.
    """
    rho = np.linspace(0.0, 1.0, n_radial + 1)
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    unit = np.exp(1j * theta)
    smin = np.inf
    for chunk in np.array_split(rho, max(1, rho.size // 64)):
        z = chunk[:, None] * unit[None, :]
        smin = min(smin, float(np.min(np.abs(f1(z)) ** 2 + np.abs(f2(z)) ** 2)))
    lip = 2 * sum(f.coefficient_norm() * f.derivative().coefficient_norm() for f in (f1, f2))
    margin = lip * (0.5 / n_radial + np.pi / n_angular)
    return smin - margin, smin


@dataclass(frozen=True, eq=False)
class CoronaData:
    """Corona data ``(f1, f2)`` with a certified ``delta``.

    Raises ``ValueError`` when a boundary sample exceeds modulus 1, when a
    zero of ``f_j`` falls in ``1 <= |z| <= 1 + 1e-3``, or when no positive
    lower bound can be certified.
    """

    f1: PowerSeries
    f2: PowerSeries
    delta: float = field(init=False)
    grid_minimum: float = field(init=False)
    grid: CircleGrid = field(default_factory=lambda: CircleGrid(1024))

    def __post_init__(self):
        f1, f2 = _series(self.f1), _series(self.f2)
        object.__setattr__(self, "f1", f1)
        object.__setattr__(self, "f2", f2)
        pts = self.grid.points
        for name, f in (("f1", f1), ("f2", f2)):
            sup = float(np.max(np.abs(f(pts))))
            if sup > 1 + 1e-12:
                raise ValueError(f"{name} has boundary modulus {sup:.6g} > 1")
            roots = f.zeros()
            near = roots[(np.abs(roots) >= 1) & (np.abs(roots) <= 1 + ROOT_MARGIN)]
            if near.size:
                raise ValueError(f"{name} has a zero at {near[0]:.6g}, too close to the circle")
        delta, smin = certify_delta(f1, f2)
        if delta <= 0:
            raise ValueError(
                f"could not certify delta > 0 (grid minimum {smin:.3g}, margin too large)"
            )
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "grid_minimum", smin)

    def S(self, z):
        return np.abs(self.f1(z)) ** 2 + np.abs(self.f2(z)) ** 2


def random_corona_data(rng, degree: int = 3, min_delta: float = 0.05, max_tries: int = 200):
    """Random polynomial pair scaled to boundary sup 1, with certified ``delta >= min_delta``."""
    fine = np.exp(2j * np.pi * np.arange(8192) / 8192)
    for _ in range(max_tries):
        pair = []
        for _ in range(2):
            c = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
            f = PowerSeries(c)
            pair.append(PowerSeries(c / (np.max(np.abs(f(fine))) * (1 + 1e-9))))
        try:
            d = CoronaData(*pair)
        except ValueError:
            continue
        if d.delta >= min_delta:
            return d
    raise RuntimeError(f"no pair with delta >= {min_delta} in {max_tries} draws")


def smooth_solution(d: CoronaData, z):
    """``(phi1, phi2)`` at ``z``: ``phi_j = conj(f_j) / S``."""
    z = np.asarray(z, dtype=complex)
    S = d.S(z)
    return np.conj(d.f1(z)) / S, np.conj(d.f2(z)) / S


def dbar_data(d: CoronaData, z):
    """``psi = conj(f1 f2' - f2 f1') / S^2`` at ``z``."""
    z = np.asarray(z, dtype=complex)
    w = d.f1(z) * d.f2.derivative()(z) - d.f2(z) * d.f1.derivative()(z)
    return np.conj(w) / d.S(z) ** 2


def wirtinger_dbar(func, z, h: float = 1e-5):
    """Central-difference ``dbar func = (d/dx + i d/dy) / 2``."""
    z = np.asarray(z, dtype=complex)
    dx = (func(z + h) - func(z - h)) / (2 * h)
    dy = (func(z + 1j * h) - func(z - 1j * h)) / (2 * h)
    return 0.5 * (dx + 1j * dy)


def dbar_cross_check(d: CoronaData, z, h: float = 1e-5) -> float:
    """Relative gap between ``dbar phi2 / f1`` and ``-dbar phi1 / f2`` at ``z``.

    Only meaningful where both ``f_j`` are away from zero.
    """
    z = np.asarray(z, dtype=complex)
    a = wirtinger_dbar(lambda x: smooth_solution(d, x)[1], z, h) / d.f1(z)
    b = -wirtinger_dbar(lambda x: smooth_solution(d, x)[0], z, h) / d.f2(z)
    return float(np.max(np.abs(a - b)) / max(np.max(np.abs(a)), 1e-300))


class CauchyTransform:
    """``Psi(z) = -(1/pi) int_D psi(zeta) / (zeta - z) dA(zeta)`` for callable ``psi``.

    ``n_angular`` angles resolve ``psi`` on circles (spectral in angle); each
    radial integral uses Gauss-Legendre with about ``n_radial`` nodes per unit
    length and at least 24 per segment.
    """

    def __init__(self, psi, n_radial: int = 200, n_angular: int = 512):
        self.psi = psi
        self.n_radial = int(n_radial)
        self.n_angular = int(n_angular)
        k = np.fft.fftfreq(self.n_angular, 1.0 / self.n_angular).astype(int)
        # the Nyquist term is ambiguous in sign and dropped
        self._keep = np.abs(k) < self.n_angular // 2
        self._m = k - 1
        self._unit = np.exp(2j * np.pi * np.arange(self.n_angular) / self.n_angular)
        self._cache = {}

    def _circle_modes(self, t):
        vals = self.psi(np.asarray(t)[:, None] * self._unit[None, :])
        return np.fft.fft(vals, axis=-1) / self.n_angular

    def _nodes(self, a, b):
        count = max(24, int(np.ceil(self.n_radial * (b - a))))
        x, wx = np.polynomial.legendre.leggauss(count)
        return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * wx

    def modes(self, rho: float) -> np.ndarray:
        """``Psi_m(rho)`` indexed by ``m mod n_angular``."""
        rho = float(rho)
        if rho in self._cache:
            return self._cache[rho]
        m = self._m
        coeff = np.zeros(self.n_angular, dtype=complex)
        pos = self._keep & (m >= 0)
        neg = self._keep & (m < 0)
        if rho < 1:
            t, wt = self._nodes(rho, 1.0)
            psi_k = self._circle_modes(t)
            ratio = (rho / t)[:, None] ** m[None, pos]
            coeff[pos] = -2 * np.sum(wt[:, None] * ratio * psi_k[:, pos], axis=0)
        if rho > 0:
            t, wt = self._nodes(0.0, rho)
            psi_k = self._circle_modes(t)
            ratio = (t / rho)[:, None] ** np.abs(m[None, neg])
            coeff[neg] = 2 * np.sum(wt[:, None] * ratio * psi_k[:, neg], axis=0)
        out = np.zeros(self.n_angular, dtype=complex)
        out[m[self._keep] % self.n_angular] = coeff[self._keep]
        self._cache[rho] = out
        return out

    def polar(self, rho, n_angular: int | None = None) -> np.ndarray:
        """Values on ``rho_i exp(2 pi i j / n)``, shape ``(len(rho), n)``.

        ``n`` must be a multiple of ``n_angular`` or divide it.
        """
        n = n_angular or self.n_angular
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        out = np.empty((rho.size, n), dtype=complex)
        for i, r in enumerate(rho):
            c = self.modes(r)
            if n >= self.n_angular:
                full = np.zeros(n, dtype=complex)
                m = np.fft.fftfreq(self.n_angular, 1.0 / self.n_angular).astype(int)
                full[m % n] = c
            else:
                full = c.reshape(-1, n).sum(axis=0)
            out[i] = np.fft.ifft(full) * n
        return out

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        rho, theta = np.abs(flat), np.angle(flat)
        if np.any(rho > 1 + 1e-12):
            raise ValueError("Cauchy transform is evaluated on the closed disk only")
        m = np.fft.fftfreq(self.n_angular, 1.0 / self.n_angular).astype(int)
        out = np.empty(flat.shape, dtype=complex)
        for r in np.unique(rho):
            sel = rho == r
            out[sel] = np.exp(1j * np.outer(theta[sel], m)) @ self.modes(min(r, 1.0))
        return out.reshape(z.shape)


def cauchy_transform(psi, z, n_radial: int = 200, n_angular: int = 512):
    """One-shot evaluation of the Cauchy transform of ``psi`` at ``z``."""
    return CauchyTransform(psi, n_radial, n_angular)(z)


def _polar_dbar(values_minus, values, values_plus, rho, h):
    """``dbar`` on a polar grid: radial central difference, spectral angle."""
    n = values.shape[-1]
    theta = 2 * np.pi * np.arange(n) / n
    k = np.fft.fftfreq(n, 1.0 / n)
    k[n // 2] = 0
    d_theta = np.fft.ifft(1j * k * np.fft.fft(values, axis=-1), axis=-1)
    d_r = (values_plus - values_minus) / (2 * h)
    rot = np.exp(1j * theta)[None, :]
    dbar = 0.5 * rot * (d_r + 1j * d_theta / rho[:, None])
    d = 0.5 * np.conj(rot) * (d_r - 1j * d_theta / rho[:, None])
    return dbar, d


@dataclass(frozen=True, eq=False)
class CoronaSolution:
    data: CoronaData
    weight: Weight
    cauchy: CauchyTransform = field(repr=False)
    correction: DistanceResult = field(repr=False)
    g1_boundary: np.ndarray = field(repr=False)
    g2_boundary: np.ndarray = field(repr=False)
    drop_cauchy: bool = False

    @property
    def approximant(self) -> PowerSeries:
        return self.correction.best_approximant

    def v_polar(self, rho, n_angular):
        h = self.approximant(np.atleast_1d(rho)[:, None] * np.exp(
            2j * np.pi * np.arange(n_angular) / n_angular)[None, :])
        if self.drop_cauchy:
            return -h
        return self.cauchy.polar(rho, n_angular) - h

    def polar(self, rho, n_angular):
        """``(g1, g2)`` on the polar grid ``rho_i exp(2 pi i j / n_angular)``."""
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        z = rho[:, None] * np.exp(2j * np.pi * np.arange(n_angular) / n_angular)[None, :]
        v = self.v_polar(rho, n_angular)
        phi1, phi2 = smooth_solution(self.data, z)
        return phi1 + self.data.f2(z) * v, phi2 - self.data.f1(z) * v

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        v = -self.approximant(z)
        if not self.drop_cauchy:
            v = v + self.cauchy(z)
        phi1, phi2 = smooth_solution(self.data, z)
        return phi1 + self.data.f2(z) * v, phi2 - self.data.f1(z) * v

    @property
    def v_boundary_norm(self) -> float:
        v = self.correction.residual_samples.values
        return float(np.sqrt(np.mean(np.abs(v) ** 2 * self.weight.values)))

    def boundary_norms(self):
        a = self.weight.values
        return tuple(
            float(np.sqrt(np.mean(np.abs(g) ** 2 * a))) for g in (self.g1_boundary, self.g2_boundary)
        )

    def dbar_residual(self, n_radial: int = 32, n_angular: int = 256, h: float = 1e-4):
        """``max |dbar g_j|`` per ``j``, relative to the common scale of both ``g``.

        The scale is the largest ``|g_k|`` or ``|d g_k|`` over both ``k``; a
        per-function scale breaks down when one ``g_j`` vanishes identically,
        while Bezout forces ``max |g_k| >= 1/2`` for some ``k``.
        """
        rho = np.arange(1, n_radial + 1) / (n_radial + 1)
        lo, mid, hi = (self.polar(r, n_angular) for r in (rho - h, rho, rho + h))
        dbars, scale = [], 0.0
        for j in range(2):
            dbar, d = _polar_dbar(lo[j], mid[j], hi[j], rho, h)
            dbars.append(float(np.max(np.abs(dbar))))
            scale = max(scale, float(np.max(np.abs(d))), float(np.max(np.abs(mid[j]))))
        return tuple(x / scale for x in dbars)


def corona_solve(d: CoronaData, w: Weight | None = None, n_radial: int = 200,
                 n_angular: int = 512, tol: float = 1e-2, drop_cauchy: bool = False):
    """Holomorphic ``(g1, g2)`` with ``f1 g1 + f2 g2 = 1``.

    ``drop_cauchy`` replaces ``Psi`` by 0 in ``v``; it exists as a negative
    control and produces non-holomorphic ``g_j``.
    """
    grid = d.grid
    w = w if w is not None else uniform_weight(grid)
    if w.grid.n != grid.n:
        raise ValueError("weight and data live on different grids")
    if abs(w.mass - 1) > 1e-9:
        raise ValueError(f"weight must have mass 1, got {w.mass}")
    cauchy = CauchyTransform(lambda z: dbar_data(d, z), n_radial, n_angular)
    trace = cauchy.polar(np.array([1.0]), grid.n)[0]
    correction = dist_h2(BoundarySamples(grid, trace), w, outer_function(w))
    pts = grid.points
    v = correction.residual_samples.values
    if drop_cauchy:
        v = v - trace
    phi1, phi2 = smooth_solution(d, pts)
    sol = CoronaSolution(
        data=d,
        weight=w,
        cauchy=cauchy,
        correction=correction,
        g1_boundary=phi1 + d.f2(pts) * v,
        g2_boundary=phi2 - d.f1(pts) * v,
        drop_cauchy=drop_cauchy,
    )
    res = sol.dbar_residual()
    if max(res) > tol:
        warnings.warn(f"d-bar residual {max(res):.3g} exceeds {tol:.1g}", RuntimeWarning)
    return sol


def psi_box_constant(d: CoronaData, n_radial: int = 64, n_angular: int = 256):
    """Measured box constant of ``|psi| dA`` (area normalized so the disk has area pi)."""
    quad = disk_quadrature(n_radial, n_angular)
    grid = CircleGrid(n_angular)
    rings = []
    for r, wr in zip(quad.radii, quad.weights):
        density = 2 * np.pi * wr * np.abs(dbar_data(d, r * grid.points))
        if density.any():
            rings.append(Ring(float(r), grid, density))
    return box_constant(DiskMeasure(rings))


@dataclass(frozen=True)
class CoronaReport:
    delta: float
    bezout_boundary: float
    bezout_interior: float
    dbar_residual: tuple
    sup_boundary: tuple
    sup_interior: tuple
    boundary_norms: tuple
    distance: float
    v_norm: float
    budget: float
    psi_box: float
    tol_bezout: float = 1e-3
    tol_dbar: float = 1e-2

    @property
    def checks(self) -> dict:
        return {
            "bezout_boundary": self.bezout_boundary <= 1e-6,
            "bezout_interior": self.bezout_interior <= self.tol_bezout,
            "dbar_residual": max(self.dbar_residual) <= self.tol_dbar,
            "correction_optimal": abs(self.v_norm - self.distance) <= 1e-8,
            "norm_budget": max(self.boundary_norms) <= self.budget + 1e-6,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["checks"] = self.checks
        out["passed"] = self.passed
        return out


def verify_corona(sol: CoronaSolution, d: CoronaData | None = None, n_radial: int = 64,
                  n_angular: int = 256, box: bool = True) -> CoronaReport:
    """Bezout, holomorphy and norm checks for a corona solution."""
    d = d or sol.data
    pts = d.grid.points
    bez_b = float(np.max(np.abs(d.f1(pts) * sol.g1_boundary + d.f2(pts) * sol.g2_boundary - 1)))
    rho = np.arange(1, n_radial + 1) / (n_radial + 1)
    z = rho[:, None] * np.exp(2j * np.pi * np.arange(n_angular) / n_angular)[None, :]
    g1, g2 = sol.polar(rho, n_angular)
    bez_i = float(np.max(np.abs(d.f1(z) * g1 + d.f2(z) * g2 - 1)))
    return CoronaReport(
        delta=d.delta,
        bezout_boundary=bez_b,
        bezout_interior=bez_i,
        dbar_residual=sol.dbar_residual(),
        sup_boundary=tuple(float(np.max(np.abs(g))) for g in (sol.g1_boundary, sol.g2_boundary)),
        sup_interior=tuple(float(np.max(np.abs(g))) for g in (g1, g2)),
        boundary_norms=sol.boundary_norms(),
        distance=sol.correction.distance,
        v_norm=sol.v_boundary_norm,
        budget=float(2 / np.sqrt(d.delta)) + sol.correction.distance,
        psi_box=psi_box_constant(d).constant if box else float("nan"),
    )
