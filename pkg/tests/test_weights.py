import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardy_forge.circle import BoundarySamples, CircleGrid
from hardy_forge.duality import apply_Ap
from hardy_forge.norms import boundary_norm
from hardy_forge.oracles import outer_closed_form
from hardy_forge.weights import (
    Weight,
    outer_function,
    outer_power,
    random_weight_family,
    uniform_weight,
    validate_and_normalize,
    weighted_szego_kernel,
)


def test_weight_rejects_nonpositive(grid):
    values = np.ones(grid.n)
    values[3] = 0.0
    with pytest.raises(ValueError):
        Weight(grid, values)
    with pytest.raises(ValueError):
        Weight(grid, np.ones(grid.n - 1))


def test_normalize(grid):
    w = validate_and_normalize(3 + np.cos(grid.nodes), grid, normalize=True)
    assert w.mass == pytest.approx(1.0, abs=1e-15)
    assert w.lower_bound == pytest.approx(2 / 3)


def test_uniform_outer_is_one(grid):
    a = outer_function(uniform_weight(grid))
    z = np.array([0, 0.5j, -0.9])
    assert np.allclose(a(z), 1.0)


def test_outer_closed_form(grid, rng):
    w = Weight(grid, (5 + 4 * np.cos(grid.nodes)) / 5)
    a = outer_function(w)
    assert np.max(np.abs(np.abs(a.boundary_power(1.0)) - w.values)) < 1e-8
    z = 0.95 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    assert np.max(np.abs(a(z) - outer_closed_form(z))) < 1e-8
    assert a.at_origin == pytest.approx(0.8, abs=1e-14)


def test_outer_is_positive_at_origin(grid):
    for w in random_weight_family(5, 6, 0.1, seed=4, grid=grid):
        a = outer_function(w)
        val = a(np.array([0j]))[0]
        assert val.real > 0 and abs(val.imag) < 1e-14


def test_random_family_reproducible(grid):
    f1 = random_weight_family(3, 5, 0.1, seed=9, grid=grid)
    f2 = random_weight_family(3, 5, 0.1, seed=9, grid=grid)
    assert all(np.array_equal(a.values, b.values) for a, b in zip(f1, f2))
    assert all(abs(w.mass - 1) < 1e-14 and w.lower_bound > 0 for w in f1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([1.0, 2.0, 4.0]))
def test_Ap_isometry(seed, p):
    rng = np.random.default_rng(seed)
    grid = CircleGrid(512)
    w = random_weight_family(1, 6, 0.1, seed=seed, grid=grid)[0]
    c = rng.normal(size=5) + 1j * rng.normal(size=5)

    def f(z):
        return np.polyval(c, z)

    lhs = np.mean(np.abs(apply_Ap(BoundarySamples.from_function(f, grid), w, p).values) ** p)
    assert lhs == pytest.approx(boundary_norm(f, w, p) ** p, rel=1e-10)


def test_outer_power_roundtrip(grid, rng):
    a = outer_function(random_weight_family(1, 6, 0.2, seed=1, grid=grid)[0])
    z = 0.9 * rng.random(20) * np.exp(2j * np.pi * rng.random(20))
    for p in (1, 2, 4):
        assert np.allclose(outer_power(a, 1 / p, z) ** p, a(z), rtol=1e-10)


def test_szego_kernel_reproduces(grid):
    w = random_weight_family(1, 4, 0.2, seed=3, grid=grid)[0]
    a = outer_function(w)
    zeta = 0.4 - 0.3j
    z = np.array([0.1j, 0.5])

    def f(x):
        return (1 + x) ** 2 / np.sqrt(np.exp(a.log_series(x)))

    k = weighted_szego_kernel(w, grid.points, zeta, outer=a)
    inner = np.mean(f(grid.points) * np.conj(k) * w.values)
    assert inner == pytest.approx(f(np.array([zeta]))[0], abs=1e-10)
    assert weighted_szego_kernel(w, z, zeta).shape == (2,)
