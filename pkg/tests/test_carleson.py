import numpy as np
import pytest

from hardy_forge.carleson import box_constant, default_centers, embedding_constant, estimate_carleson
from hardy_forge.circle import CircleGrid
from hardy_forge.corpus import random_exhaustion
from hardy_forge.exhaustions import Atom, DiskMeasure, boundary_weight


def test_unit_atom_box_constant():
    m = DiskMeasure(atoms=[Atom(0j, 1.0)])
    assert box_constant(m).constant == pytest.approx(2 / np.pi)


def test_atom_near_boundary_box_constant():
    m = DiskMeasure(atoms=[Atom(0.9 + 0j, 0.1)])
    res = box_constant(m)
    assert res.constant == pytest.approx(1.0)
    assert res.height == pytest.approx(0.1)


def test_embedding_unit_atom_uniform_weight():
    m = DiskMeasure(atoms=[Atom(0j, 1.0)])
    res = embedding_constant(m, None, 2, default_centers(m))
    assert res.constant == pytest.approx(1.0)
    assert res.center == 0


def test_constant_one_for_riesz_measures(rng, grid):
    for kind in ("atom", "ring", "stack"):
        e = random_exhaustion(rng, kind, grid)
        alpha = boundary_weight(e.measure, grid)
        emb = embedding_constant(e.measure, alpha, 2, default_centers(e.measure))
        assert emb.constant <= 1 + 1e-9


def test_scaling_is_linear(rng):
    grid = CircleGrid(256)
    e = random_exhaustion(rng, "ring", grid)
    m2 = e.measure.scaled(2)
    assert box_constant(m2, n_theta=128).constant == pytest.approx(
        2 * box_constant(e.measure, n_theta=128).constant, rel=1e-12
    )
    c = default_centers(e.measure, 4)
    assert embedding_constant(m2, None, 2, c, grid).constant == pytest.approx(
        2 * embedding_constant(e.measure, None, 2, c, grid).constant, rel=1e-12
    )


def test_estimate_reports_witnesses():
    pts = 1 - 2.0 ** -np.arange(1, 7)
    nu = DiskMeasure(atoms=[Atom(complex(z), 1 - z**2) for z in pts])
    est = estimate_carleson(nu)
    assert est.box_constant > 1 and est.embedding_constant > 1
    assert len(est.box_witness) == 2
