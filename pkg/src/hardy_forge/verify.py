"""Invariant suite behind ``hardy-forge verify all``.

Every check records a measured value, a tolerance and a verdict. Checks of
kind ``"quadrature"`` measure a discretization error; a ``tol`` override in the
run configuration replaces their tolerance (a tiny override produces honest,
controlled failures). Other checks compare quantities that must agree up to
rounding, or are one-sided inequalities, and keep their own tolerances.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .carleson import box_constant, default_centers, embedding_constant
from .circle import (
    BoundarySamples,
    CircleGrid,
    circle_integral,
    herglotz_extend,
    poisson_extend,
    riesz_project,
    to_fourier,
)
from .corona import (
    CauchyTransform,
    CoronaData,
    corona_solve,
    dbar_cross_check,
    random_corona_data,
    verify_corona,
    wirtinger_dbar,
)
from .corpus import (
    norm_corpus,
    random_exhaustion,
    random_polynomial,
    random_radial_exhaustion,
    random_trig_density,
)
from .duality import apply_Ap, dist_h2, dual_lower_bound, dual_sup_polynomial
from .exhaustions import boundary_weight, ring_exhaustion
from .functions import BlaschkeProduct, PowerSeries
from .interpolation import (
    InterpolationProblem,
    PointSequence,
    bridge_report,
    min_norm_interpolant,
    mixture_norm_check,
    pick_min_norm,
)
from .norms import (
    area_norm,
    boundary_norm,
    carleson_identity_check,
    derivative_energy,
    lelong_jensen_check,
    radial_mean_monotonicity,
)
from .oracles import lstsq_distance, outer_closed_form, pick_generalized_eig, two_point_min_norm
from .validation import check_grid_size
from .weights import Weight, outer_function, outer_power, random_weight_family

__all__ = ["RunConfig", "Check", "VerifyReport", "verify_suite", "bridge_problem", "CHECK_GROUPS"]


@dataclass(frozen=True)
class RunConfig:
    grid_n: int = 1024
    disk_radial: int = 200
    disk_angular: int = 512
    tol: float | None = None
    seed: int = 0
    format: str = "json"

    def __post_init__(self):
        check_grid_size(self.grid_n)
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tolerance overrides must be positive")
        if self.disk_radial < 16 or self.disk_angular < 16:
            raise ValueError("disk quadrature needs at least 16 nodes per direction")
        if self.format not in ("json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def grid(self) -> CircleGrid:
        return CircleGrid(self.grid_n)

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    kind: str = "exact"
    relation: str = "<="


@dataclass
class VerifyReport:
    config: RunConfig
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "config": self.config.as_dict(),
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }


class _Recorder:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.checks = []

    def upper(self, name, value, tol, kind="exact"):
        """Pass when ``value <= tol``."""
        if kind == "quadrature" and self.cfg.tol is not None:
            tol = self.cfg.tol
        value = float(value)
        self.checks.append(Check(name, value, float(tol), bool(value <= tol), kind))

    def flag(self, name, ok: bool, value=float("nan")):
        self.checks.append(Check(name, float(value), 0.0, bool(ok), "exact", "holds"))


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def check_circle(rec: _Recorder, rng):
    grid = rec.cfg.grid
    s = BoundarySamples(grid, rng.normal(size=grid.n) + 1j * rng.normal(size=grid.n))
    back = to_fourier(to_fourier(s), "inverse")
    rec.upper("circle.fourier_roundtrip", np.max(np.abs(back.values - s.values)), 1e-12)
    P1 = riesz_project(to_fourier(s))
    P2 = riesz_project(P1)
    rec.upper("circle.riesz_idempotent", np.max(np.abs(P2.coeffs - P1.coeffs)), 1e-12)
    n1 = np.sum(np.abs(P1.coeffs) ** 2)
    n0 = np.sum(np.abs(to_fourier(s).coeffs) ** 2)
    rec.upper("circle.riesz_norm_decreasing", max(n1 - n0, 0.0), 1e-12)
    real = BoundarySamples(grid, s.values.real)
    rec.upper(
        "circle.poisson_mean_at_origin",
        abs(poisson_extend(real, np.array([0j]))[0] - circle_integral(real)),
        1e-12,
    )
    smooth = BoundarySamples(grid, np.cos(grid.nodes) + 0.3 * np.sin(3 * grid.nodes) ** 2)
    z = 0.999 * grid.points
    gap = np.max(np.abs(herglotz_extend(smooth)(z).real - poisson_extend(smooth, z)))
    rec.upper("circle.herglotz_vs_poisson", gap, 1e-8, "quadrature")


def check_weights(rec: _Recorder, rng):
    grid = rec.cfg.grid
    family = random_weight_family(10, 8, 0.1, seed=int(rng.integers(2**31)), grid=grid)
    worst = 0.0
    for w in family:
        a = outer_function(w)
        worst = max(worst, np.max(np.abs(np.abs(a.boundary_power(1.0)) - w.values)))
    rec.upper("weights.outer_modulus", worst, 1e-8, "quadrature")

    w = Weight(grid, (5 + 4 * np.cos(grid.nodes)) / 5)
    a = outer_function(w)
    z = 0.95 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    rec.upper("weights.outer_closed_form", np.max(np.abs(a(z) - outer_closed_form(z))), 1e-8, "quadrature")
    rec.upper("weights.outer_at_origin", abs(a.at_origin - 0.8), 1e-12)

    worst = 0.0
    for i in range(50):
        wi = family[i % len(family)]
        p = (1, 2, 4)[i % 3]
        f = random_polynomial(rng, int(rng.integers(1, 9)))
        lhs = np.mean(np.abs(apply_Ap(BoundarySamples.from_function(f, grid), wi, p).values) ** p)
        rhs = boundary_norm(f, wi, p) ** p
        worst = max(worst, _rel(lhs, rhs))
    rec.upper("weights.Ap_isometry", worst, 1e-10)

    worst = 0.0
    for wi, p in zip(family[:3], (1, 2, 4)):
        ai = outer_function(wi)
        worst = max(worst, np.max(np.abs(outer_power(ai, 1 / p, z) ** p - ai(z)) / np.abs(ai(z))))
    rec.upper("weights.outer_power_roundtrip", worst, 1e-10)


def check_exhaustions(rec: _Recorder, rng):
    grid = rec.cfg.grid
    mass_gap, pos_gap, decay, negative = 0.0, 0.0, 0.0, True
    for kind in ("atom", "ring", "stack") * 3:
        e = random_exhaustion(rng, kind, grid)
        alpha = boundary_weight(e.measure, grid)
        mass_gap = max(mass_gap, abs(alpha.mass - e.mass))
        kernel_min = min(
            [(1 - r.radius) / (1 + r.radius) for r in e.measure.rings]
            + [(1 - abs(a.point)) / (1 + abs(a.point)) for a in e.measure.atoms]
        )
        pos_gap = max(pos_gap, e.mass * kernel_min - alpha.lower_bound)
        zin = np.sqrt(rng.random(400)) * 0.999 * np.exp(2j * np.pi * rng.random(400))
        negative &= bool(np.all(e(zin) < 0))
        decay = max(decay, float(np.max(np.abs(e(0.9999 * grid.points[::8])))))
    rec.upper("exhaustions.mass_conservation", mass_gap, 1e-10)
    rec.upper("exhaustions.positivity_lower_bound", max(pos_gap, 0.0), 1e-12)
    rec.flag("exhaustions.negative_inside", negative)
    rec.upper("exhaustions.boundary_decay", decay, 1e-2)

    theta = grid.nodes
    worst_final, monotone, lip_ok = 0.0, True, True
    for _ in range(10):
        deg = int(rng.integers(1, 6))
        m = np.arange(1, deg + 1)
        a, b = rng.uniform(-1, 1, size=(2, deg)) * 0.5 / deg
        vals = 1 + np.cos(np.outer(theta, m)) @ a + np.sin(np.outer(theta, m)) @ b
        w = Weight(grid, vals).normalized()
        lip = float(np.sum((np.abs(a) + np.abs(b)) * m)) / w.values.mean()
        errs = []
        for r in (0.9, 0.99, 0.999):
            back = boundary_weight(ring_exhaustion(w, r).measure, grid)
            errs.append(float(np.max(np.abs(back.values - w.values))))
            lip_ok &= errs[-1] <= 5 * (1 - r) * lip + 1e-14
        monotone &= errs[0] > errs[1] > errs[2]
        worst_final = max(worst_final, errs[-1])
    rec.flag("exhaustions.roundtrip_decreasing", monotone)
    rec.flag("exhaustions.roundtrip_lipschitz_bound", lip_ok)
    rec.upper("exhaustions.roundtrip_r0999", worst_final, 1e-2, "quadrature")

    worst = 0.0
    for _ in range(3):
        f = random_polynomial(rng, int(rng.integers(1, 6)))
        lhs, rhs = lelong_jensen_check(f, float(rng.uniform(-2, -0.1)), rec.cfg.disk_radial, grid)
        worst = max(worst, _rel(lhs, rhs))
    rec.upper("exhaustions.jensen_consistency", worst, 1e-6, "quadrature")


def check_norms(rec: _Recorder, rng):
    cfg = rec.cfg
    grid = cfg.grid
    worst = 0.0
    for f, e, p in norm_corpus(int(rng.integers(2**31)), 30, grid):
        a = area_norm(f, e, p, cfg.disk_radial, cfg.disk_angular)
        b = boundary_norm(f, boundary_weight(e.measure, grid), p)
        worst = max(worst, _rel(a, b))
    rec.upper("norms.area_vs_boundary", worst, 1e-6, "quadrature")

    drop = 0.0
    for _ in range(100):
        e = random_radial_exhaustion(rng)
        f = random_polynomial(rng, int(rng.integers(1, 6)))
        p = float(rng.choice([1.0, 2.0, 4.0]))
        floor = float(e.radial_profile(np.array([1e-6]))[0])
        top = max(floor, -20.0)
        levels = np.sort(rng.uniform(top * 0.999, -1e-3, size=6))
        means = radial_mean_monotonicity(f, e, p, levels, CircleGrid(256))
        drop = max(drop, float(np.max(np.maximum(means[:-1] - means[1:], 0.0) / np.abs(means[1:]))))
    rec.upper("norms.radial_monotonicity", drop, 1e-10)

    ratio, deriv, comparison = 0.0, -np.inf, -np.inf
    for kind in ("atom", "ring", "stack"):
        e = random_exhaustion(rng, kind, grid)
        alpha = boundary_weight(e.measure, grid)
        for p in (1, 2, 4):
            f = random_polynomial(rng, 4, zero_free=(p == 1))
            ratio = max(ratio, carleson_identity_check(f, e, p, grid).ratio)
            bn = boundary_norm(f, alpha, p)
            deriv = max(deriv, derivative_energy(f, e, p, cfg.disk_radial, cfg.disk_angular) - bn**p)
            classical = boundary_norm(f, None, p, grid)
            comparison = max(comparison, alpha.lower_bound ** (1 / p) * classical - bn)
    rec.upper("norms.carleson_ratio", ratio, 1 + 1e-9)
    rec.upper("norms.derivative_inequality", deriv, 1e-9)
    rec.upper("norms.hopf_comparison", comparison, 1e-12)


def check_duality(rec: _Recorder, rng):
    grid = rec.cfg.grid
    # smooth weights: a clipped weight has a slowly decaying outer function that
    # neither a degree-40 oracle nor the grid resolves to these tolerances
    family = [Weight(grid, random_trig_density(rng, grid, 6, 0.6)) for _ in range(20)]
    gap, pyth, shift, dual = 0.0, 0.0, 0.0, -np.inf
    for w in family:
        deg = int(rng.integers(1, 6))
        c = rng.normal(size=deg) + 1j * rng.normal(size=deg)
        phi = BoundarySamples(grid, np.conj(grid.points[:, None] ** np.arange(1, deg + 1)) @ c)
        a = outer_function(w)
        res = dist_h2(phi, w, a)
        gap = max(gap, abs(res.distance - lstsq_distance(phi, w, 40)))
        pyth = max(pyth, res.pythagoras_defect)
        poly = random_polynomial(rng, 5)
        moved = dist_h2(phi + BoundarySamples.from_function(poly, grid), w, a)
        shift = max(shift, abs(moved.distance - res.distance))
        g = random_polynomial(rng, 3)
        dual = max(dual, dual_lower_bound(phi, g, w, 2, a) - res.distance)
        value, _ = dual_sup_polynomial(phi, w, 8, a)
        dual = max(dual, value - res.distance)
    rec.upper("duality.distance_vs_lstsq", gap, 1e-6, "quadrature")
    rec.upper("duality.pythagoras", pyth, 1e-10)
    rec.upper("duality.translation_invariance", shift, 1e-10)
    rec.upper("duality.dual_bound_below_distance", dual, 1e-9)


def check_carleson(rec: _Recorder, rng):
    grid = rec.cfg.grid
    worst = 0.0
    for i in range(10):
        e = random_exhaustion(rng, ("atom", "ring", "stack")[i % 3], grid)
        alpha = boundary_weight(e.measure, grid)
        worst = max(worst, embedding_constant(e.measure, alpha, 2, default_centers(e.measure)).constant)
    rec.upper("carleson.constant_one", worst, 1 + 1e-9)

    e = random_exhaustion(rng, "ring", grid)
    alpha = boundary_weight(e.measure, grid)
    centers = default_centers(e.measure, 8)
    b1 = box_constant(e.measure, n_theta=256).constant
    b2 = box_constant(e.measure.scaled(2), n_theta=256).constant
    e1 = embedding_constant(e.measure, alpha, 2, centers).constant
    e2 = embedding_constant(e.measure.scaled(2), alpha, 2, centers).constant
    rec.upper("carleson.scaling", max(_rel(b2, 2 * b1), _rel(e2, 2 * e1)), 1e-12)


def bridge_problem(rng, count: int = 6) -> InterpolationProblem:
    pts = 1 - 2.0 ** -np.arange(1, count + 1)
    return InterpolationProblem(PointSequence(pts), np.exp(2j * np.pi * rng.random(count)))


def check_interpolation(rec: _Recorder, rng):
    grid = rec.cfg.grid
    zeros = 0.8 * np.sqrt(rng.random(5)) * np.exp(2j * np.pi * rng.random(5))
    B = BlaschkeProduct(zeros)
    rec.upper("interp.blaschke_unimodular", np.max(np.abs(np.abs(B(grid.points)) - 1)), 1e-12)
    inner = 0.99 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    rec.flag("interp.blaschke_inside", bool(np.all(np.abs(B(inner)) < 1)))

    w = random_weight_family(1, 6, 0.2, seed=int(rng.integers(2**31)), grid=grid)[0]
    pts = 0.85 * np.sqrt(rng.random(5)) * np.exp(2j * np.pi * rng.random(5))
    prob = InterpolationProblem(PointSequence(pts), rng.normal(size=5) + 1j * rng.normal(size=5))
    f, norm = min_norm_interpolant(prob, w)
    rec.upper("interp.constraints", np.max(np.abs(f(pts) - prob.targets)), 1e-8)
    sub = InterpolationProblem(PointSequence(pts[:-1]), prob.targets[:-1])
    rec.upper("interp.norm_monotone_removal", max(min_norm_interpolant(sub, w)[1] - norm, 0.0), 1e-12)

    r, s = 0.6, 0.7 * np.exp(0.4j)
    two = InterpolationProblem(PointSequence([0, r]), [0, s])
    rec.upper("interp.two_point_min_norm", abs(min_norm_interpolant(two)[1] - two_point_min_norm(r, s)), 1e-12)
    one = InterpolationProblem(PointSequence([0.3 + 0.1j]), [0.5])
    rec.upper("interp.pick_one_point", abs(pick_min_norm(one) - 0.5), 1e-8)
    rec.upper("interp.pick_schwarz", abs(pick_min_norm(two) - abs(s) / r), 1e-8)
    zz = 0.9 * np.sqrt(rng.random(5)) * np.exp(2j * np.pi * rng.random(5))
    self_interp = InterpolationProblem(PointSequence(zz), B(zz))
    rec.upper("interp.pick_blaschke", pick_min_norm(self_interp), 1 + 1e-8)
    rec.upper(
        "interp.pick_vs_generalized_eig",
        abs(pick_min_norm(prob) - pick_generalized_eig(pts, prob.targets)),
        1e-7,
    )

    bprob = bridge_problem(rng)
    family = random_weight_family(20, 8, 0.1, seed=int(rng.integers(2**31)), grid=grid)
    rep = bridge_report(bprob, family)
    checks = rep.checks()
    rec.upper("interp.ball_inclusion", float(np.max(rep.min_norms) - rep.pick_norm), 1e-6)
    rec.flag("interp.sparse_bound", checks["sparse_bound"], rep.bound)
    rec.upper("interp.bridge_ratio", rep.ratio, 1.0 + 1e-6)

    worst = -np.inf
    for _ in range(5):
        pair = random_weight_family(2, 5, 0.1, seed=int(rng.integers(2**31)), grid=grid)
        per, bound = mixture_norm_check(random_polynomial(rng, 4), pair)
        worst = max(worst, float(np.max(per)) - bound)
    rec.upper("interp.mixture_bound", worst, 1e-12)


def check_corona(rec: _Recorder, rng):
    cfg = rec.cfg
    grid = cfg.grid
    z = 0.9 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
    ones = CauchyTransform(lambda x: np.ones_like(x), cfg.disk_radial, cfg.disk_angular)
    rec.upper("corona.cauchy_conj_z", np.max(np.abs(ones(z) - np.conj(z))), 1e-3, "quadrature")

    def psi(x):
        return 1 / (1 + np.abs(x) ** 2) ** 2

    bump = CauchyTransform(psi, cfg.disk_radial, cfg.disk_angular)
    zin = 0.95 * z
    rel = np.max(np.abs(wirtinger_dbar(bump, zin) - psi(zin))) / np.max(np.abs(psi(zin)))
    rec.upper("corona.cauchy_dbar", rel, 1e-3, "quadrature")

    corpus = [
        CoronaData(PowerSeries([1]), PowerSeries([0, 1]), grid=grid),
        CoronaData(PowerSeries([-0.3, 1]) * (1 / 1.3), PowerSeries([0.4, 1]) * (1 / 1.4), grid=grid),
        random_corona_data(rng),
    ]
    cross = dbar_cross_check(corpus[1], np.array([0.1 + 0.5j, -0.6 + 0.2j, 0.5j]))
    rec.upper("corona.psi_cross_formula", cross, 1e-6, "quadrature")
    bez_b = bez_i = dbar = opt = budget = 0.0
    for d in corpus:
        sol = corona_solve(d, None, cfg.disk_radial, cfg.disk_angular)
        r = verify_corona(sol, box=False)
        bez_b = max(bez_b, r.bezout_boundary)
        bez_i = max(bez_i, r.bezout_interior)
        dbar = max(dbar, max(r.dbar_residual))
        opt = max(opt, abs(r.v_norm - r.distance))
        budget = max(budget, max(r.boundary_norms) - r.budget)
    rec.upper("corona.bezout_boundary", bez_b, 1e-6)
    rec.upper("corona.bezout_interior", bez_i, 1e-3)
    rec.upper("corona.dbar_residual", dbar, 1e-2, "quadrature")
    rec.upper("corona.correction_optimal", opt, 1e-8)
    rec.upper("corona.norm_budget", budget, 1e-6)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        bad = corona_solve(corpus[0], None, cfg.disk_radial, cfg.disk_angular, drop_cauchy=True)
    rec.flag("corona.negative_control_flagged", max(bad.dbar_residual()) > 1e-2, max(bad.dbar_residual()))


CHECK_GROUPS = {
    "circle": check_circle,
    "weights": check_weights,
    "exhaustions": check_exhaustions,
    "norms": check_norms,
    "duality": check_duality,
    "carleson": check_carleson,
    "interpolation": check_interpolation,
    "corona": check_corona,
}


def verify_suite(cfg: RunConfig | None = None, groups=None) -> VerifyReport:
    """Run the invariant checks; each group draws from its own seeded stream."""
    cfg = cfg or RunConfig()
    rec = _Recorder(cfg)
    names = list(CHECK_GROUPS) if groups is None else list(groups)
    for i, name in enumerate(CHECK_GROUPS):
        if name in names:
            CHECK_GROUPS[name](rec, np.random.default_rng([cfg.seed, i]))
    return VerifyReport(cfg, rec.checks)
