"""Finite interpolation in weighted H^2 and in H^infinity.

The minimal weighted-H^2 interpolant is a combination of weighted Szego
kernels (Gram solve). The H^infinity side is the classical Pick criterion,
solved by bisection on the norm bound. ``bridge_report`` compares the two over
a family of weights: every weighted minimum sits below the Pick norm because the
H^infinity ball lies inside every mass-one weighted H^2 ball.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .carleson import default_centers, embedding_constant
from .circle import BoundarySamples, CircleGrid
from .exhaustions import Atom, DiskMeasure, boundary_weight, ring_exhaustion
from .functions import BlaschkeProduct
from .validation import check_disk_points
from .weights import OuterFunction, Weight, outer_function, uniform_weight
from .weights import weighted_szego_kernel

__all__ = [
    "PointSequence",
    "InterpolationProblem",
    "IllConditionedError",
    "KernelExpansion",
    "BridgeReport",
    "pseudo_hyperbolic",
    "sparsity_delta",
    "blaschke",
    "candidate_phi",
    "candidate_times_blaschke",
    "weighted_szego_kernel",
    "min_norm_interpolant",
    "pick_matrix",
    "pick_min_norm",
    "bridge_report",
    "mixture_norm_check",
    "MinNormInterpolator",
]


class IllConditionedError(ValueError):
    """Raised when a Gram matrix is too ill-conditioned to solve reliably."""

    def __init__(self, msg, condition):
        super().__init__(msg)
        self.condition = condition


def pseudo_hyperbolic(z, w):
    return np.abs((z - w) / (1 - np.conj(w) * z))


@dataclass(frozen=True, eq=False)
class PointSequence:
    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_1d(check_disk_points(self.points))
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("need a non-empty 1-D sequence of points")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size


@dataclass(frozen=True, eq=False)
class InterpolationProblem:
    sequence: PointSequence
    targets: np.ndarray

    def __post_init__(self):
        seq = self.sequence
        if not isinstance(seq, PointSequence):
            seq = PointSequence(seq)
        targets = np.atleast_1d(np.asarray(self.targets, dtype=complex))
        if targets.shape != seq.points.shape:
            raise ValueError("points and targets must have equal lengths")
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "targets", targets)

    @property
    def points(self) -> np.ndarray:
        return self.sequence.points

    @property
    def sup_target(self) -> float:
        return float(np.max(np.abs(self.targets)))


def sparsity_delta(seq) -> float:
    """``inf_k prod_{j != k} |(z_j - z_k) / (1 - conj(z_k) z_j)|``."""
    pts = seq.points if isinstance(seq, PointSequence) else np.atleast_1d(seq)
    d = pseudo_hyperbolic(pts[:, None], pts[None, :])
    np.fill_diagonal(d, 1.0)
    delta = float(np.min(np.prod(d, axis=1)))
    if delta <= 0:
        raise ValueError("sequence has repeated points (delta = 0)")
    return delta


def blaschke(seq, exclude: int | None = None) -> BlaschkeProduct:
    pts = seq.points if isinstance(seq, PointSequence) else np.atleast_1d(seq)
    if exclude is not None:
        if not 0 <= exclude < pts.size:
            raise IndexError(f"exclude index {exclude} out of range")
        pts = np.delete(pts, exclude)
    return BlaschkeProduct(pts)


def _coefficients(prob: InterpolationProblem) -> np.ndarray:
    pts = prob.points
    bk = np.array([blaschke(pts, k)(pts[k]) for k in range(pts.size)])
    return prob.targets / bk


def candidate_phi(prob: InterpolationProblem, grid: CircleGrid | None = None):
    """Boundary samples of ``sum_j C_j (1 - conj(z_j) z) / (z - z_j)`` and ``C``.

    ``C_j = s_j / B_j(z_j)``, so ``phi * B`` interpolates the targets.
    """
    sparsity_delta(prob.sequence)
    grid = grid or CircleGrid(1024)
    C = _coefficients(prob)
    z = grid.points[:, None]
    zj = prob.points[None, :]
    values = np.sum(C * (1 - np.conj(zj) * z) / (z - zj), axis=1)
    return BoundarySamples(grid, values), C


def candidate_times_blaschke(prob: InterpolationProblem, z):
    """``(phi B)(z) = sum_j C_j B_j(z)``, regular at the nodes."""
    C = _coefficients(prob)
    z = np.asarray(z, dtype=complex)
    total = np.zeros(z.shape, dtype=complex)
    for k in range(C.size):
        total = total + C[k] * blaschke(prob.points, k)(z)
    return total


class KernelExpansion:
    """``f(z) = sum_k c_k k(z, z_k)`` for the weighted Szego kernel ``k``."""

    def __init__(self, outer: OuterFunction, nodes, coef):
        self.outer = outer
        self.nodes = np.asarray(nodes, dtype=complex)
        self.coef = np.asarray(coef, dtype=complex)
        self._scale = self.coef / np.conj(outer.power(0.5, self.nodes))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        szego = 1.0 / (1 - np.conj(self.nodes) * z[..., None])
        return self.outer.power(-0.5, z) * (szego @ self._scale)

    def derivative(self):
        dlog = self.outer.log_series.derivative()

        def fprime(z):
            z = np.asarray(z, dtype=complex)
            zc = np.conj(self.nodes)
            szego = 1.0 / (1 - zc * z[..., None])
            s = szego @ self._scale
            ds = (zc * szego**2) @ self._scale
            return self.outer.power(-0.5, z) * (ds - 0.5 * dlog(z) * s)

        return fprime


def min_norm_interpolant(prob: InterpolationProblem, w: Weight | None = None, outer=None,
                         max_condition: float = 1e12):
    """Minimal weighted-H^2 interpolant by the kernel Gram system ``G c = s``.

    Returns ``(f, norm)`` with ``norm = sqrt(c^H s)``.
    """
    sparsity_delta(prob.sequence)
    if outer is None:
        outer = outer_function(w if w is not None else uniform_weight(CircleGrid(1024)))
    pts = prob.points
    G = weighted_szego_kernel(None, pts[:, None], pts[None, :], outer=outer)
    cond = float(np.linalg.cond(G))
    if cond > max_condition:
        raise IllConditionedError(
            f"Gram matrix condition number {cond:.3e} exceeds {max_condition:.1e}", cond
        )
    c = linalg.solve(G, prob.targets, assume_a="her")
    norm = float(np.sqrt(max(np.real(np.vdot(c, prob.targets)), 0.0)))
    return KernelExpansion(outer, pts, c), norm


def pick_matrix(prob: InterpolationProblem, R: float) -> np.ndarray:
    z, s = prob.points, prob.targets
    return (R**2 - s[:, None] * np.conj(s[None, :])) / (1 - z[:, None] * np.conj(z[None, :]))


def _pick_whitened(prob: InterpolationProblem):
    """``L^{-1} S K S^H L^{-H}`` where ``K = L L^H`` is the Szego Gram matrix.

    The Pick matrix ``R^2 K - S K S^H`` is congruent to ``R^2 I`` minus this
    matrix, so its positivity reduces to an eigenvalue test that stays well
    scaled even when ``K`` is badly conditioned.
    """
    z, s = prob.points, prob.targets
    K = 1 / (1 - z[:, None] * np.conj(z[None, :]))
    L = np.linalg.cholesky(K)
    T = linalg.solve_triangular(L, s[:, None] * K, lower=True)
    M = linalg.solve_triangular(L, (T * np.conj(s)[None, :]).conj().T, lower=True)
    return 0.5 * (M + M.conj().T)


def pick_min_norm(prob: InterpolationProblem, tol: float = 1e-8, full: bool = False):
    """Smallest ``R`` whose Pick matrix is positive semidefinite, by bisection.

    Bracket: ``max |s_j|`` from below, ``||s|| / delta`` from above (enlarged
    until feasible).
    """
    delta = sparsity_delta(prob.sequence)
    M = _pick_whitened(prob)
    top = float(np.linalg.eigvalsh(M)[-1])

    def feasible(R):
        return R**2 >= top

    lo = prob.sup_target
    hi = max(prob.sup_target / delta, lo)
    while not feasible(hi):
        hi *= 2
    iterations = 0
    if feasible(lo):
        hi = lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
        iterations += 1
    if full:
        return {"R": hi, "lower": lo, "upper": hi, "iterations": iterations,
                "closed_form": float(np.sqrt(max(top, 0.0)))}
    return hi


@dataclass(frozen=True, eq=False)
class BridgeReport:
    weight_ids: list
    min_norms: np.ndarray = field(repr=False)
    pick_norm: float
    carleson_constant: float
    delta: float
    sup_target: float

    @property
    def sup_norm(self) -> float:
        return float(np.max(self.min_norms)) if len(self.min_norms) else 0.0

    @property
    def c_prime(self) -> float:
        return self.carleson_constant**2 / self.delta

    @property
    def bound(self) -> float:
        return self.c_prime * self.sup_target

    @property
    def ratio(self) -> float:
        return self.sup_norm / self.pick_norm

    def checks(self, tol: float = 1e-6) -> dict:
        return {
            "ball_inclusion": bool(np.all(self.min_norms <= self.pick_norm + tol)),
            "sparse_bound": bool(np.all(self.min_norms <= self.bound)),
        }

    def rows(self):
        for wid, norm in zip(self.weight_ids, self.min_norms):
            yield wid, float(norm), self.pick_norm, float(norm / self.pick_norm)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["weight_id", "min_norm", "pick_norm", "ratio"])
        for wid, norm, pick, ratio in self.rows():
            writer.writerow([wid, f"{norm:.17g}", f"{pick:.17g}", f"{ratio:.17g}"])
        return buf.getvalue()


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HARDY_FORGE_THREADS", "1")))
    except ValueError:
        return 1


def bridge_report(prob: InterpolationProblem, family, ring_radius: float | None = 0.95,
                  centers=None, tol: float = 1e-8) -> BridgeReport:
    """Minimal weighted-H^2 norms over a weight family versus the Pick norm.

    With ``ring_radius`` set, each family member is first turned into the
    boundary weight of its ring exhaustion (so it certifiably comes from an
    exhaustion of mass one); with ``None`` the weights are used as given.
    """
    def solve(w):
        if abs(w.mass - 1) > 1e-9:
            raise ValueError("bridge weights must have mass 1")
        if ring_radius is not None:
            w = boundary_weight(ring_exhaustion(w, ring_radius).measure, w.grid)
        return min_norm_interpolant(prob, w)[1]

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        norms = np.array(list(pool.map(solve, family)))
    nu = DiskMeasure(atoms=[Atom(z, 1 - abs(z) ** 2) for z in prob.points])
    centers = default_centers(nu) if centers is None else centers
    C = embedding_constant(nu, None, 2, centers).constant
    return BridgeReport(
        weight_ids=list(range(len(norms))),
        min_norms=norms,
        pick_norm=pick_min_norm(prob, tol),
        carleson_constant=C,
        delta=sparsity_delta(prob.sequence),
        sup_target=prob.sup_target,
    )


def mixture_norm_check(f, weights):
    """For the average weight ``u`` of ``k`` weights: ``||f||_{v_j}^2 <= k ||f||_u^2``.

    Returns ``(per-weight squared norms, k * squared norm for the average)``.
    """
    k = len(weights)
    pts = weights[0].grid.points
    vals = np.abs(f(pts)) ** 2
    mix = np.mean([w.values for w in weights], axis=0)
    per = np.array([np.mean(vals * w.values) for w in weights])
    return per, k * float(np.mean(vals * mix))


class MinNormInterpolator(RegressorMixin, BaseEstimator):
    """Estimator wrapper around ``min_norm_interpolant``.

    ``fit(X, y)`` takes interpolation nodes ``X`` (complex, shape (n,) or
    (n, 1), or real pairs of shape (n, 2)) and complex targets ``y``;
    ``predict`` evaluates the minimal-norm interpolant.

    Parameters
    ----------
    weight : Weight or None
        Boundary weight; ``None`` means the unweighted space.
    max_condition : float
        Gram condition number above which ``fit`` refuses to solve.
    """

    def __init__(self, weight=None, max_condition=1e12):
        self.weight = weight
        self.max_condition = max_condition

    @staticmethod
    def _points(X):
        X = np.asarray(X)
        if X.ndim == 2 and X.shape[1] == 2 and not np.iscomplexobj(X):
            X = X[:, 0] + 1j * X[:, 1]
        elif X.ndim == 2 and X.shape[1] == 1:
            X = X[:, 0]
        if X.ndim != 1:
            raise ValueError(f"cannot interpret X with shape {X.shape} as points")
        return check_disk_points(X)

    def fit(self, X, y):
        pts = self._points(X)
        prob = InterpolationProblem(PointSequence(pts), np.asarray(y, dtype=complex))
        f, norm = min_norm_interpolant(prob, self.weight, max_condition=self.max_condition)
        self.interpolant_ = f
        self.norm_ = norm
        self.coef_ = f.coef
        self.nodes_ = pts
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "interpolant_")
        return self.interpolant_(self._points(X))

    def score(self, X, y, sample_weight=None):
        """Negative max error (complex targets do not fit R^2)."""
        err = np.abs(self.predict(X) - np.asarray(y, dtype=complex))
        if sample_weight is not None:
            err = err * np.asarray(sample_weight)
        return -float(np.max(err))
