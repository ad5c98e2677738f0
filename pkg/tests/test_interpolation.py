import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.exceptions import NotFittedError

from hardy_forge.circle import CircleGrid
from hardy_forge.functions import BlaschkeProduct
from hardy_forge.interpolation import (
    IllConditionedError,
    InterpolationProblem,
    MinNormInterpolator,
    PointSequence,
    blaschke,
    bridge_report,
    candidate_phi,
    candidate_times_blaschke,
    min_norm_interpolant,
    mixture_norm_check,
    pick_matrix,
    pick_min_norm,
    sparsity_delta,
)
from hardy_forge.oracles import pick_generalized_eig, two_point_min_norm
from hardy_forge.weights import random_weight_family


def _disk_points(rng, n, radius=0.85):
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def test_sparsity_delta():
    assert sparsity_delta(PointSequence([0.3j])) == 1.0
    assert sparsity_delta(PointSequence([0, 0.5])) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        sparsity_delta(PointSequence([0.2, 0.2]))


def test_blaschke_unimodular(grid, rng):
    B = blaschke(_disk_points(rng, 5))
    assert np.max(np.abs(np.abs(B(grid.points)) - 1)) < 1e-12
    assert np.all(np.abs(B(_disk_points(rng, 100, 0.99))) < 1)
    assert blaschke([0.1, 0.2, 0.3], exclude=1)(np.array([0.2]))[0] != 0


def test_candidate_interpolates(grid, rng):
    pts = _disk_points(rng, 4)
    prob = InterpolationProblem(PointSequence(pts), rng.normal(size=4) + 0j)
    samples, C = candidate_phi(prob, grid)
    assert np.allclose(candidate_times_blaschke(prob, pts), prob.targets, atol=1e-12)
    B = BlaschkeProduct(pts)
    z = grid.points
    assert np.allclose(samples.values * B(z), candidate_times_blaschke(prob, z), atol=1e-10)


def test_two_point_min_norm_closed_form():
    r, s = 0.6, 0.7
    prob = InterpolationProblem(PointSequence([0, r]), [0, s])
    f, norm = min_norm_interpolant(prob)
    assert norm == pytest.approx(two_point_min_norm(r, s), abs=1e-12)
    assert np.allclose(f(prob.points), prob.targets, atol=1e-12)


def test_min_norm_constraints_and_monotone(grid, rng):
    w = random_weight_family(1, 6, 0.2, seed=2, grid=grid)[0]
    pts = _disk_points(rng, 5)
    prob = InterpolationProblem(PointSequence(pts), rng.normal(size=5) + 1j * rng.normal(size=5))
    f, norm = min_norm_interpolant(prob, w)
    assert np.max(np.abs(f(pts) - prob.targets)) < 1e-8
    sub = InterpolationProblem(PointSequence(pts[:-1]), prob.targets[:-1])
    assert min_norm_interpolant(sub, w)[1] <= norm + 1e-12


def test_min_norm_boundary_norm_and_derivative(grid, rng):
    w = random_weight_family(1, 4, 0.2, seed=8, grid=grid)[0]
    pts = _disk_points(rng, 3, 0.6)
    prob = InterpolationProblem(PointSequence(pts), [1, 2j, -1])
    f, norm = min_norm_interpolant(prob, w)
    assert np.sqrt(np.mean(np.abs(f(grid.points)) ** 2 * w.values)) == pytest.approx(norm, rel=1e-9)
    z, h = np.array([0.2 + 0.1j]), 1e-6
    fd = (f(z + h) - f(z - h)) / (2 * h)
    assert f.derivative()(z) == pytest.approx(fd, rel=1e-7)


def test_ill_conditioned_gram_raises():
    pts = np.array([0.5, 0.5 + 1e-9])
    with pytest.raises(IllConditionedError):
        min_norm_interpolant(InterpolationProblem(PointSequence(pts), [1, 1]))


def test_pick_one_point():
    prob = InterpolationProblem(PointSequence([0.3 + 0.1j]), [0.5])
    assert pick_min_norm(prob) == pytest.approx(0.5, abs=1e-8)


def test_pick_schwarz_two_point():
    prob = InterpolationProblem(PointSequence([0, 0.6]), [0, 0.7])
    assert pick_min_norm(prob) == pytest.approx(0.7 / 0.6, abs=1e-8)


def test_pick_blaschke_self_interpolation(rng):
    B = BlaschkeProduct(_disk_points(rng, 4))
    zz = _disk_points(rng, 6, 0.9)
    assert pick_min_norm(InterpolationProblem(PointSequence(zz), B(zz))) <= 1 + 1e-8


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_pick_matches_generalized_eigenvalues(seed, n):
    rng = np.random.default_rng(seed)
    pts = _disk_points(rng, n)
    if n > 1 and sparsity_delta(PointSequence(pts)) < 1e-3:
        return
    s = rng.normal(size=n) + 1j * rng.normal(size=n)
    prob = InterpolationProblem(PointSequence(pts), s)
    R = pick_min_norm(prob, tol=1e-10)
    assert R >= np.max(np.abs(s)) - 1e-12
    assert R == pytest.approx(pick_generalized_eig(pts, s), rel=1e-6, abs=1e-8)
    assert np.linalg.eigvalsh(pick_matrix(prob, R * (1 + 1e-6)))[0] >= -1e-9


def test_bridge_report(grid, rng):
    pts = 1 - 2.0 ** -np.arange(1, 7)
    prob = InterpolationProblem(PointSequence(pts), np.exp(2j * np.pi * rng.random(6)))
    family = random_weight_family(5, 8, 0.1, seed=1, grid=grid)
    rep = bridge_report(prob, family)
    assert all(rep.checks().values())
    assert rep.ratio <= 1
    lines = rep.to_csv().splitlines()
    assert lines[0] == "weight_id,min_norm,pick_norm,ratio"
    assert len(lines) == 6


def test_mixture_bound(grid, rng):
    pair = random_weight_family(3, 5, 0.1, seed=5, grid=grid)
    def f(z):
        return 1 + z + 0.5j * z**3

    per, bound = mixture_norm_check(f, pair)
    assert np.all(per <= bound + 1e-12)


def test_estimator(grid, rng):
    pts = _disk_points(rng, 4)
    y = rng.normal(size=4) + 1j * rng.normal(size=4)
    est = MinNormInterpolator()
    with pytest.raises(NotFittedError):
        est.predict(pts)
    est.fit(pts, y)
    assert np.allclose(est.predict(pts), y, atol=1e-10)
    pairs = np.column_stack([pts.real, pts.imag])
    assert np.allclose(est.predict(pairs), y, atol=1e-10)
    assert est.score(pts, y) > -1e-10
    assert est.get_params() == {"max_condition": 1e12, "weight": None}
    w = random_weight_family(1, 4, 0.2, seed=0, grid=CircleGrid(1024))[0]
    est.set_params(weight=w).fit(pts, y)
    assert est.norm_ > 0
