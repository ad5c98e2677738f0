import numpy as np
import pytest

from hardy_forge.circle import CircleGrid
from hardy_forge.corpus import random_exhaustion
from hardy_forge.exhaustions import (
    Atom,
    DiskMeasure,
    Exhaustion,
    Ring,
    boundary_weight,
    green_potential,
    lsc_stack_to_exhaustion,
    radial_sweep_measure,
    ring_exhaustion,
)
from hardy_forge.weights import Weight


def test_atom_potential_is_log_modulus():
    m = DiskMeasure(atoms=[Atom(0j, 1.0)])
    z = np.array([0.5, 0.3j])
    assert np.allclose(green_potential(m, z), np.log(np.abs(z)))


def test_uniform_ring_potential_closed_form():
    grid = CircleGrid(256)
    m = DiskMeasure([Ring(0.5, grid, np.ones(256))])
    assert green_potential(m, np.array([0.2 + 0j]))[0] == pytest.approx(np.log(0.5), abs=1e-12)
    assert green_potential(m, np.array([0.8j]))[0] == pytest.approx(np.log(0.8), abs=1e-12)


def test_ring_potential_polar_matches_direct(rng):
    grid = CircleGrid(256)
    ring = Ring(0.6, grid, 1 + 0.5 * np.cos(2 * grid.nodes) + 0.2 * np.sin(grid.nodes))
    rho = np.array([0.3, 0.75])
    polar = ring.potential_polar(rho, 64)
    z = rho[:, None] * np.exp(2j * np.pi * np.arange(64) / 64)[None, :]
    assert np.allclose(polar, ring.potential(z), atol=1e-12)


def test_boundary_weight_of_atom():
    grid = CircleGrid(1024)
    alpha = boundary_weight(DiskMeasure(atoms=[Atom(0.5 + 0j, 1.0)]), grid)
    assert alpha.values[0] == pytest.approx(3.0)
    assert alpha.mass == pytest.approx(1.0, abs=1e-12)


def test_boundary_weight_of_ring_is_poisson_smoothing():
    grid = CircleGrid(1024)
    ring = Ring(0.9, grid, 1 + 0.8 * np.cos(grid.nodes))
    alpha = boundary_weight(DiskMeasure([ring]), grid)
    assert np.allclose(alpha.values, 1 + 0.72 * np.cos(grid.nodes), atol=1e-14)


def test_mass_conservation(rng, grid):
    for kind in ("atom", "ring", "stack"):
        e = random_exhaustion(rng, kind, grid)
        assert boundary_weight(e.measure, grid).mass == pytest.approx(e.mass, abs=1e-10)


def test_roundtrip_converges(grid):
    w = Weight(grid, 1 + 0.5 * np.cos(grid.nodes) + 0.2 * np.sin(3 * grid.nodes))
    errs = []
    for r in (0.9, 0.99, 0.999):
        back = boundary_weight(ring_exhaustion(w, r).measure, grid)
        errs.append(np.max(np.abs(back.values - w.values)))
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 1e-2


def test_ring_exhaustion_requires_mass_one(grid):
    with pytest.raises(ValueError):
        ring_exhaustion(Weight(grid, 2 * np.ones(grid.n)), 0.5)


def test_exhaustion_negative_and_decays(rng, grid):
    for kind in ("atom", "ring", "stack"):
        e = random_exhaustion(rng, kind, grid)
        z = 0.99 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        assert np.all(e(z) < 0)
        assert np.max(np.abs(e(0.9999 * grid.points[::16]))) < 1e-2


def test_mass_above_one_rejected():
    with pytest.raises(ValueError):
        Exhaustion(DiskMeasure(atoms=[Atom(0j, 0.8), Atom(0.5 + 0j, 0.3)]))


def test_stack_layers_and_remainder(grid):
    base = 0.3 * (1 + 0.3 * np.cos(grid.nodes))
    stack = [Weight(grid, base * k) for k in (1, 2, 3.2)]
    e = lsc_stack_to_exhaustion(stack)
    assert e.mass == pytest.approx(1.0, abs=1e-12)
    assert e.remainder == pytest.approx(1 - 0.96, abs=1e-12)
    assert not e.active_caps()
    with pytest.raises(ValueError):
        lsc_stack_to_exhaustion([stack[1], stack[0]])


def test_sweep_radius_closed_form():
    e = Exhaustion(DiskMeasure(atoms=[Atom(0j, 1.0)]))
    sweep = radial_sweep_measure(e, -0.1)
    assert sweep.radius == pytest.approx(np.exp(-0.1), abs=1e-11)
    grid = CircleGrid(256)
    e = Exhaustion(DiskMeasure([Ring(0.2, grid, np.full(256, 0.1))], [Atom(0j, 0.9)]))
    assert radial_sweep_measure(e, -0.5).radius == pytest.approx(np.exp(-0.5), abs=1e-11)


def test_sweep_rejects_nonradial(grid):
    e = Exhaustion(DiskMeasure(atoms=[Atom(0.3 + 0j, 1.0)]))
    with pytest.raises(ValueError):
        radial_sweep_measure(e, -0.5)
