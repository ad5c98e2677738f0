"""Acceptance gate: twelve criteria at their stated tolerances and time limits.

Each test appends one ``criterion N: PASS|FAIL ...`` line, printed in the
terminal summary (and to stdout under ``-s``).
"""

import json
import time

import numpy as np
import pytest

from hardy_forge.circle import BoundarySamples, CircleGrid
from hardy_forge.cli import run
from hardy_forge.corona import CauchyTransform, CoronaData, corona_solve, random_corona_data, verify_corona
from hardy_forge.corpus import norm_corpus, random_exhaustion, random_polynomial, random_radial_exhaustion, random_trig_density
from hardy_forge.carleson import default_centers, embedding_constant
from hardy_forge.duality import apply_Ap, dist_h2, dual_lower_bound, dual_sup_polynomial
from hardy_forge.exhaustions import boundary_weight, ring_exhaustion
from hardy_forge.functions import BlaschkeProduct, PowerSeries
from hardy_forge.interpolation import InterpolationProblem, PointSequence, bridge_report, pick_min_norm
from hardy_forge.norms import area_norm, boundary_norm, radial_mean_monotonicity
from hardy_forge.oracles import lstsq_distance, outer_closed_form
from hardy_forge.weights import Weight, outer_function, random_weight_family

ACCEPTANCE_LINES = []
GRID = CircleGrid(1024)


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_outer_exactness():
    t0 = time.perf_counter()
    w = Weight(GRID, (5 + 4 * np.cos(GRID.nodes)) / 5)
    a = outer_function(w)
    mod_err = float(np.max(np.abs(np.abs(a.boundary_power(1.0)) - w.values)))
    rng = np.random.default_rng(1)
    z = 0.95 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    int_err = float(np.max(np.abs(a(z) - outer_closed_form(z))))
    dt = time.perf_counter() - t0
    record(1, mod_err <= 1e-8 and int_err <= 1e-8 and dt < 1,
           f"modulus error {mod_err:.2e}, interior error {int_err:.2e}, {dt:.2f}s")


def test_criterion_02_Ap_isometry():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for i in range(50):
        w = random_weight_family(1, int(rng.integers(1, 9)), 0.1, seed=int(rng.integers(2**31)), grid=GRID)[0]
        p = (1, 2, 4)[i % 3]
        f = random_polynomial(rng, int(rng.integers(1, 9)))
        lhs = np.mean(np.abs(apply_Ap(BoundarySamples.from_function(f, GRID), w, p).values) ** p)
        rhs = boundary_norm(f, w, p) ** p
        worst = max(worst, abs(lhs - rhs) / rhs)
    dt = time.perf_counter() - t0
    record(2, worst <= 1e-10 and dt < 5, f"max relative defect {worst:.2e}, {dt:.2f}s")


def test_criterion_03_norm_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for f, e, p in norm_corpus(3, 30, GRID):
        a = area_norm(f, e, p, 200, 512)
        b = boundary_norm(f, boundary_weight(e.measure, GRID), p)
        worst = max(worst, abs(a - b) / b)
    dt = time.perf_counter() - t0
    record(3, worst <= 1e-6 and dt < 60, f"max relative gap {worst:.2e} over 30 cases, {dt:.2f}s")


def test_criterion_04_roundtrip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    monotone, final = True, 0.0
    for _ in range(10):
        w = Weight(GRID, random_trig_density(rng, GRID, int(rng.integers(1, 6)), 0.6))
        errs = [
            float(np.max(np.abs(boundary_weight(ring_exhaustion(w, r).measure, GRID).values - w.values)))
            for r in (0.9, 0.99, 0.999)
        ]
        monotone &= errs[0] > errs[1] > errs[2]
        final = max(final, errs[2])
    dt = time.perf_counter() - t0
    record(4, monotone and final <= 1e-2 and dt < 10,
           f"decreasing={monotone}, sup error at r=0.999 {final:.2e}, {dt:.2f}s")


def test_criterion_05_monotonicity():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        e = random_radial_exhaustion(rng)
        f = random_polynomial(rng, int(rng.integers(1, 6)))
        p = float(rng.choice([1.0, 2.0, 4.0]))
        floor = max(float(e.radial_profile(np.array([1e-6]))[0]), -20.0)
        levels = np.sort(rng.uniform(floor * 0.999, -1e-3, size=6))
        means = radial_mean_monotonicity(f, e, p, levels, CircleGrid(256))
        worst = max(worst, float(np.max(np.maximum(means[:-1] - means[1:], 0) / np.abs(means[1:]))))
    record(5, worst <= 1e-10, f"largest relative decrease {worst:.2e} over 100 sweeps")


def test_criterion_06_duality():
    rng = np.random.default_rng(6)
    gap, excess = 0.0, -np.inf
    for _ in range(20):
        w = Weight(GRID, random_trig_density(rng, GRID, 6, 0.6))
        deg = int(rng.integers(1, 6))
        c = rng.normal(size=deg) + 1j * rng.normal(size=deg)
        phi = BoundarySamples(GRID, np.conj(GRID.points[:, None] ** np.arange(1, deg + 1)) @ c)
        a = outer_function(w)
        d = dist_h2(phi, w, a).distance
        gap = max(gap, abs(d - lstsq_distance(phi, w, 40)))
        for _ in range(3):
            excess = max(excess, dual_lower_bound(phi, random_polynomial(rng, 4), w, 2, a) - d)
        excess = max(excess, dual_sup_polynomial(phi, w, 10, a)[0] - d)
    record(6, gap <= 1e-6 and excess <= 1e-9,
           f"max gap to degree-40 oracle {gap:.2e}, max dual excess {excess:.2e}")


def test_criterion_07_interpolation_bound():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    pts = 1 - 2.0 ** -np.arange(1, 7)
    prob = InterpolationProblem(PointSequence(pts), np.exp(2j * np.pi * rng.random(6)))
    rep = bridge_report(prob, random_weight_family(20, 8, 0.1, seed=7, grid=GRID))
    dt = time.perf_counter() - t0
    ok_sparse = bool(np.all(rep.min_norms <= rep.bound))
    ok_pick = bool(np.all(rep.min_norms <= rep.pick_norm + 1e-6))
    record(7, ok_sparse and ok_pick and dt < 30,
           f"max min-norm {rep.sup_norm:.4g}, C'|s| = {rep.bound:.4g}, Pick {rep.pick_norm:.4g}, "
           f"bridge ratio {rep.ratio:.4f}, {dt:.2f}s")


def test_criterion_08_pick_oracle():
    one = pick_min_norm(InterpolationProblem(PointSequence([0.3 + 0.1j]), [0.5]))
    two = pick_min_norm(InterpolationProblem(PointSequence([0, 0.6]), [0, 0.7]))
    rng = np.random.default_rng(8)
    B = BlaschkeProduct(0.8 * np.sqrt(rng.random(4)) * np.exp(2j * np.pi * rng.random(4)))
    zz = 0.9 * np.sqrt(rng.random(6)) * np.exp(2j * np.pi * rng.random(6))
    self_R = pick_min_norm(InterpolationProblem(PointSequence(zz), B(zz)))
    e1, e2 = abs(one - 0.5), abs(two - 0.7 / 0.6)
    record(8, e1 <= 1e-8 and e2 <= 1e-8 and self_R <= 1 + 1e-8,
           f"one-point error {e1:.1e}, two-point error {e2:.1e}, Blaschke R* {self_R:.8f}")


def test_criterion_09_corona():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    corpus = [
        CoronaData(PowerSeries([1]), PowerSeries([0, 1])),
        CoronaData(PowerSeries([-0.3, 1]) * (1 / 1.3), PowerSeries([0.4, 1]) * (1 / 1.4)),
    ] + [random_corona_data(rng, 3, 0.05) for _ in range(3)]
    bez, dbar, budget = 0.0, 0.0, -np.inf
    for d in corpus:
        rep = verify_corona(corona_solve(d, None, 200, 512), box=False)
        bez = max(bez, rep.bezout_interior, rep.bezout_boundary)
        dbar = max(dbar, max(rep.dbar_residual))
        budget = max(budget, max(rep.boundary_norms) - rep.budget)
    dt = time.perf_counter() - t0
    record(9, bez <= 1e-3 and dbar <= 1e-2 and budget <= 1e-6 and dt < 120,
           f"{len(corpus)} pairs, Bezout {bez:.1e}, dbar {dbar:.1e}, budget slack {-budget:.3g}, {dt:.1f}s")


def test_criterion_10_cauchy_convention():
    rng = np.random.default_rng(10)
    z = 0.9 * np.sqrt(rng.random(400)) * np.exp(2j * np.pi * rng.random(400))
    z = np.concatenate([z, 0.9 * GRID.points[::16]])
    err = float(np.max(np.abs(CauchyTransform(np.ones_like)(z) - np.conj(z))))
    record(10, err <= 1e-3, f"sup |Psi - conj(z)| = {err:.2e} on |z| <= 0.9")


def test_criterion_11_carleson_constant_one():
    rng = np.random.default_rng(11)
    worst = 0.0
    for i in range(10):
        e = random_exhaustion(rng, ("atom", "ring", "stack")[i % 3], GRID)
        alpha = boundary_weight(e.measure, GRID)
        worst = max(worst, embedding_constant(e.measure, alpha, 2, default_centers(e.measure)).constant)
    record(11, worst <= 1 + 1e-9, f"max embedding constant {worst:.12f}")


@pytest.mark.slow
def test_criterion_12_verify_all(tmp_path):
    outs, codes = [], []
    t0 = time.perf_counter()
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        codes.append(run(["verify", "all", "--seed", "7", "--out", str(path)]))
        outs.append(path.read_bytes())
    dt = (time.perf_counter() - t0) / 2
    report = json.loads(outs[0])
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    record(12, codes == [0, 0] and outs[0] == outs[1] and dt < 300,
           f"{len(report['checks'])} checks, failed {failed}, identical={outs[0] == outs[1]}, {dt:.1f}s per run")
