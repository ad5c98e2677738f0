import numpy as np
import pytest

from hardy_forge.circle import CircleGrid
from hardy_forge.corpus import norm_corpus, random_exhaustion, random_polynomial, random_radial_exhaustion
from hardy_forge.exhaustions import Atom, DiskMeasure, Exhaustion, Ring, boundary_weight, lsc_stack_to_exhaustion
from hardy_forge.functions import PowerSeries
from hardy_forge.norms import (
    area_norm,
    boundary_norm,
    carleson_identity_check,
    derivative_energy,
    disk_quadrature,
    lelong_jensen_check,
    radial_mean_monotonicity,
)
from hardy_forge.weights import Weight


def test_quadrature_total_and_monomials():
    quad = disk_quadrature(64, 64, (0.4,))
    assert np.sum(quad.weights) == pytest.approx(0.5, abs=1e-14)
    vals = np.abs(quad.points) ** 4
    assert quad.integrate(vals) == pytest.approx(1 / 6, abs=1e-13)


def test_log_modulus_normalization():
    e = Exhaustion(DiskMeasure(atoms=[Atom(0j, 1.0)]))
    z = PowerSeries([0, 1])
    assert area_norm(z, e, 2) == pytest.approx(1.0, abs=1e-8)
    assert derivative_energy(z, e, 2) == pytest.approx(1.0, abs=1e-8)
    assert derivative_energy(PowerSeries([0, 0, 1]), e, 2) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("case", range(30))
def test_norm_identity_corpus(case):
    f, e, p = norm_corpus(0)[case]
    area = area_norm(f, e, p)
    bnd = boundary_norm(f, boundary_weight(e.measure), p)
    assert abs(area - bnd) / bnd <= 1e-6


def test_area_norm_refuses_active_caps():
    grid = CircleGrid(256)
    stack = [Weight(grid, np.full(256, 0.95)), Weight(grid, np.full(256, 1.0))]
    e = lsc_stack_to_exhaustion(stack, radii=[0.3, 0.99])
    assert e.active_caps()
    with pytest.raises(ValueError):
        area_norm(PowerSeries([1, 1]), e, 2)


def test_monotone_radial_means(rng):
    for _ in range(20):
        e = random_radial_exhaustion(rng)
        f = random_polynomial(rng, 4)
        floor = max(float(e.radial_profile(np.array([1e-6]))[0]), -20.0)
        levels = np.sort(rng.uniform(floor * 0.999, -1e-3, size=5))
        means = radial_mean_monotonicity(f, e, 2, levels, CircleGrid(256))
        assert np.all(np.diff(means) >= -1e-10 * np.abs(means[1:]))


def test_carleson_ratio_and_derivative_inequality(rng, grid):
    for kind in ("atom", "ring", "stack"):
        e = random_exhaustion(rng, kind, grid)
        alpha = boundary_weight(e.measure, grid)
        for p in (1, 2, 4):
            f = random_polynomial(rng, 4, zero_free=(p == 1))
            chk = carleson_identity_check(f, e, p, grid)
            assert chk.passed
            assert derivative_energy(f, e, p) <= boundary_norm(f, alpha, p) ** p + 1e-9
            classical = boundary_norm(f, None, p, grid)
            assert boundary_norm(f, alpha, p) >= alpha.lower_bound ** (1 / p) * classical - 1e-12


def test_derivative_energy_of_constant_is_zero():
    grid = CircleGrid(256)
    e = Exhaustion(DiskMeasure([Ring(0.5, grid, np.ones(256))]))
    assert derivative_energy(PowerSeries([2.0]), e, 2) == 0.0


def test_jensen_identity(rng):
    for level in (-0.1, -1.0, -3.0):
        f = random_polynomial(rng, 5)
        lhs, rhs = lelong_jensen_check(f, level)
        assert lhs == pytest.approx(rhs, rel=1e-6)
    with pytest.raises(ValueError):
        lelong_jensen_check(PowerSeries([1]), 0.0)
