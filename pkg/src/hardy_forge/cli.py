"""Command-line front end.

Exit codes: 0 success, 1 input error (printed as ``error[CODE]: message`` on
stderr), 2 an invariant check failed. JSON reports embed the run
configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from .circle import BoundarySamples
from .corona import CoronaData, corona_solve, verify_corona
from .duality import dist_h2
from .exhaustions import boundary_weight, ring_exhaustion
from .functions import PowerSeries
from .interpolation import (
    IllConditionedError,
    bridge_report,
    candidate_phi,
    min_norm_interpolant,
    pick_min_norm,
    sparsity_delta,
)
from .io import (
    SchemaError,
    complex_to_json,
    corona_from_json,
    dumps,
    exhaustion_from_json,
    exhaustion_to_json,
    load_json,
    parse_complex,
    problem_from_json,
    weight_from_json,
    weight_to_json,
)
from .norms import area_norm, boundary_norm
from .verify import RunConfig, verify_suite
from .weights import outer_function, random_weight_family, uniform_weight

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


class InvariantFailure(Exception):
    """A computed report violates one of its checks."""

    def __init__(self, report):
        super().__init__("invariant check failed")
        self.report = report


def _config(args) -> RunConfig:
    return RunConfig(
        grid_n=args.grid,
        disk_radial=args.disk_radial,
        disk_angular=args.disk_angular,
        tol=args.tol,
        seed=args.seed,
        format=args.format or "json",
    )


def _coeffs(text: str) -> PowerSeries:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"coefficients are not valid JSON: {exc}") from exc
    if not isinstance(raw, list) or not raw:
        raise SchemaError("coefficients must be a non-empty JSON list")
    return PowerSeries([parse_complex(c) for c in raw])


def _weight(path, cfg):
    return weight_from_json(load_json(path)) if path else uniform_weight(cfg.grid)


# --- weight -----------------------------------------------------------------

def cmd_weight_validate(args, cfg):
    w = weight_from_json(load_json(args.input))
    return {"n": w.grid.n, "mass": w.mass, "lower_bound": w.lower_bound,
            "normalized": abs(w.mass - 1) <= 1e-9}


def cmd_weight_normalize(args, cfg):
    return weight_to_json(weight_from_json(load_json(args.input)).normalized())


def cmd_weight_outer(args, cfg):
    w = weight_from_json(load_json(args.input))
    a = outer_function(w)
    boundary = a.boundary_power(1.0)
    taylor = np.fft.fft(boundary) / w.grid.n
    return {
        "at_origin": a.at_origin,
        "modulus_error": float(np.max(np.abs(np.abs(boundary) - w.values))),
        "coefficients": [complex_to_json(c) for c in taylor[: args.terms]],
    }


# --- exhaust ----------------------------------------------------------------

def cmd_exhaust_from_weight(args, cfg):
    w = weight_from_json(load_json(args.input))
    return exhaustion_to_json(ring_exhaustion(w, args.radius))


def cmd_exhaust_boundary_weight(args, cfg):
    e = exhaustion_from_json(load_json(args.input))
    grid = e.measure.rings[0].grid if e.measure.rings else cfg.grid
    return weight_to_json(boundary_weight(e.measure, grid))


def cmd_exhaust_roundtrip(args, cfg):
    w = weight_from_json(load_json(args.input))
    errors = []
    for r in args.radii:
        back = boundary_weight(ring_exhaustion(w, r).measure, w.grid)
        errors.append({"r": r, "sup_error": float(np.max(np.abs(back.values - w.values)))})
    decreasing = all(a["sup_error"] > b["sup_error"] for a, b in zip(errors, errors[1:]))
    return {"errors": errors, "decreasing": decreasing}


# --- norm -------------------------------------------------------------------

def cmd_norm_boundary(args, cfg):
    f = _coeffs(args.coeffs)
    if args.exhaustion:
        e = exhaustion_from_json(load_json(args.exhaustion))
        w = boundary_weight(e.measure, cfg.grid)
    else:
        w = _weight(args.weight, cfg)
    return {"p": args.p, "norm": boundary_norm(f, w, args.p)}


def cmd_norm_area(args, cfg):
    f = _coeffs(args.coeffs)
    e = exhaustion_from_json(load_json(args.exhaustion))
    rep = area_norm(f, e, args.p, cfg.disk_radial, cfg.disk_angular, full=True)
    return {"p": args.p, "norm": rep.value, "measure_term": rep.measure_term,
            "energy_term": rep.energy_term, "excluded_area": rep.excluded_mass}


def cmd_norm_check(args, cfg):
    f = _coeffs(args.coeffs)
    e = exhaustion_from_json(load_json(args.exhaustion))
    area = area_norm(f, e, args.p, cfg.disk_radial, cfg.disk_angular)
    bnd = boundary_norm(f, boundary_weight(e.measure, cfg.grid), args.p)
    tol = cfg.tol if cfg.tol is not None else 1e-6
    gap = abs(area - bnd) / bnd
    report = {"p": args.p, "area_norm": area, "boundary_norm": bnd,
              "relative_gap": gap, "tolerance": tol, "passed": gap <= tol}
    if not report["passed"]:
        raise InvariantFailure(report)
    return report


# --- dist -------------------------------------------------------------------

def cmd_dist(args, cfg):
    w = _weight(args.weight, cfg)
    try:
        modes = json.loads(args.phi_modes)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"--phi-modes is not valid JSON: {exc}") from exc
    if not isinstance(modes, dict) or not modes:
        raise SchemaError("--phi-modes must be a JSON object {mode: coefficient}")
    pts = w.grid.points
    values = np.zeros(w.grid.n, dtype=complex)
    for k, c in modes.items():
        try:
            values += parse_complex(c) * pts ** int(k)
        except ValueError as exc:
            raise SchemaError(f"bad mode {k!r}") from exc
    res = dist_h2(BoundarySamples(w.grid, values), w)
    return {
        "distance": res.distance,
        "pythagoras_defect": res.pythagoras_defect,
        "leakage": res.leakage,
        "best_approximant": [complex_to_json(c) for c in res.best_approximant.coeffs[: args.terms]],
    }


# --- interp -----------------------------------------------------------------

def _problem(args):
    return problem_from_json(load_json(args.problem))


def cmd_interp_delta(args, cfg):
    return {"delta": sparsity_delta(_problem(args).sequence)}


def cmd_interp_candidate(args, cfg):
    prob = _problem(args)
    samples, C = candidate_phi(prob, cfg.grid)
    return {"coefficients": [complex_to_json(c) for c in C],
            "boundary_sup": float(np.max(np.abs(samples.values)))}


def cmd_interp_minnorm(args, cfg):
    prob = _problem(args)
    f, norm = min_norm_interpolant(prob, _weight(args.weight, cfg))
    return {"norm": norm, "coefficients": [complex_to_json(c) for c in f.coef],
            "max_constraint_error": float(np.max(np.abs(f(prob.points) - prob.targets)))}


def cmd_interp_pick(args, cfg):
    out = pick_min_norm(_problem(args), args.pick_tol, full=True)
    return {"R": out["R"], "lower": out["lower"], "upper": out["upper"],
            "iterations": out["iterations"]}


def cmd_interp_bridge(args, cfg):
    prob = _problem(args)
    family = random_weight_family(args.family, args.degree, args.floor, seed=cfg.seed, grid=cfg.grid)
    rep = bridge_report(prob, family, args.ring_radius)
    checks = rep.checks()
    if (args.format or "csv") == "csv":
        text = rep.to_csv()
        if not all(checks.values()):
            raise InvariantFailure(text)
        return text
    report = {
        "rows": [dict(zip(("weight_id", "min_norm", "pick_norm", "ratio"), r)) for r in rep.rows()],
        "pick_norm": rep.pick_norm, "carleson_constant": rep.carleson_constant,
        "delta": rep.delta, "c_prime": rep.c_prime, "bound": rep.bound, "checks": checks,
    }
    if not all(checks.values()):
        raise InvariantFailure(report)
    return report


# --- corona -----------------------------------------------------------------

def _corona(args, cfg):
    f1, f2, w = corona_from_json(load_json(args.input))
    d = CoronaData(f1, f2, grid=w.grid if w is not None else cfg.grid)
    if w is not None:
        w = w.normalized()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        sol = corona_solve(d, w, cfg.disk_radial, cfg.disk_angular)
    return verify_corona(sol).as_dict()


def cmd_corona_solve(args, cfg):
    return _corona(args, cfg)


def cmd_corona_verify(args, cfg):
    report = _corona(args, cfg)
    if not report["passed"]:
        raise InvariantFailure(report)
    return report


# --- verify -----------------------------------------------------------------

def cmd_verify_all(args, cfg):
    report = verify_suite(cfg).as_dict()
    if not report["passed"]:
        raise InvariantFailure(report)
    return report


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--grid", type=int, default=1024, help="circle grid size (power of two >= 256)")
    p.add_argument("--disk-radial", type=int, default=200)
    p.add_argument("--disk-angular", type=int, default=512)
    p.add_argument("--tol", type=float, default=None, help="override quadrature tolerances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hardy-forge", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(group, name, func, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("weight").add_subparsers(dest="action", required=True)
    for name, func in (("validate", cmd_weight_validate), ("normalize", cmd_weight_normalize)):
        leaf(g, name, func).add_argument("--in", dest="input", required=True)
    p = leaf(g, "outer", cmd_weight_outer)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--terms", type=int, default=16)

    g = groups.add_parser("exhaust").add_subparsers(dest="action", required=True)
    p = leaf(g, "from-weight", cmd_exhaust_from_weight)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--radius", type=float, default=0.99)
    leaf(g, "boundary-weight", cmd_exhaust_boundary_weight).add_argument(
        "--in", dest="input", required=True
    )
    p = leaf(g, "roundtrip", cmd_exhaust_roundtrip)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--radii", type=float, nargs="+", default=[0.9, 0.99, 0.999])

    g = groups.add_parser("norm").add_subparsers(dest="action", required=True)
    for name, func in (("boundary", cmd_norm_boundary), ("area", cmd_norm_area), ("check", cmd_norm_check)):
        p = leaf(g, name, func)
        p.add_argument("--coeffs", required=True, help='JSON list, e.g. "[1, [0, 0.5]]"')
        p.add_argument("--p", type=float, default=2.0)
        p.add_argument("--exhaustion", required=(name != "boundary"))
        if name == "boundary":
            p.add_argument("--weight")

    p = groups.add_parser("dist", parents=[common])
    p.set_defaults(func=cmd_dist)
    p.add_argument("--weight")
    p.add_argument("--phi-modes", required=True, help='JSON object, e.g. \'{"-1": 1}\'')
    p.add_argument("--terms", type=int, default=16)

    g = groups.add_parser("interp").add_subparsers(dest="action", required=True)
    for name, func in (("delta", cmd_interp_delta), ("candidate", cmd_interp_candidate)):
        leaf(g, name, func).add_argument("--problem", required=True)
    p = leaf(g, "minnorm", cmd_interp_minnorm)
    p.add_argument("--problem", required=True)
    p.add_argument("--weight")
    p = leaf(g, "pick", cmd_interp_pick)
    p.add_argument("--problem", required=True)
    p.add_argument("--pick-tol", type=float, default=1e-8)
    p = leaf(g, "bridge", cmd_interp_bridge)
    p.add_argument("--problem", required=True)
    p.add_argument("--family", type=int, default=20)
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--floor", type=float, default=0.1)
    p.add_argument("--ring-radius", type=float, default=0.95)

    g = groups.add_parser("corona").add_subparsers(dest="action", required=True)
    for name, func in (("solve", cmd_corona_solve), ("verify", cmd_corona_verify)):
        leaf(g, name, func).add_argument("--in", dest="input", required=True)

    g = groups.add_parser("verify").add_subparsers(dest="action", required=True)
    leaf(g, "all", cmd_verify_all)
    return parser


def _emit(result, args, cfg):
    if isinstance(result, str):
        text = result
    else:
        command = " ".join(x for x in (args.group, getattr(args, "action", None)) if x)
        if "config" in result:
            text = dumps({"command": command, **result})
        else:
            text = dumps({"command": command, "config": cfg.as_dict(), "result": result})
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _fail(code: str, message: str) -> int:
    sys.stderr.write(f"error[{code}]: {message}\n")
    return EXIT_INPUT


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
    except ValueError as exc:
        return _fail("E_CONFIG", str(exc))
    try:
        result = args.func(args, cfg)
    except InvariantFailure as failure:
        _emit(failure.report, args, cfg)
        return EXIT_INVARIANT
    except SchemaError as exc:
        code = "E_JSON" if "malformed" in str(exc) or "cannot read" in str(exc) else "E_SCHEMA"
        return _fail(code, str(exc))
    except IllConditionedError as exc:
        return _fail("E_ILL_CONDITIONED", str(exc))
    except ValueError as exc:
        return _fail("E_PRECONDITION", str(exc))
    _emit(result, args, cfg)
    return EXIT_OK


def main():
    sys.exit(run())
