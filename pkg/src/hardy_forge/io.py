"""JSON and CSV interchange.

Schemas::

    weight      {"n": int, "samples": [float], "normalized": bool}
    exhaustion  {"rings": [{"r": float, "density": [float], "cap": float|null}],
                 "atoms": [{"re": float, "im": float, "mass": float}]}
    problem     {"points": [{"re", "im"}], "targets": [{"re", "im"}]}
    corona      {"f1": [complex], "f2": [complex], "weight": weight | "classical"}

Complex numbers are read from ``{"re": x, "im": y}``, ``[x, y]`` or a bare
real number, and always written as ``{"re": x, "im": y}``. Floats are written
with 17 significant digits so reports round-trip exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .circle import CircleGrid
from .exhaustions import Atom, DiskMeasure, Exhaustion, Ring
from .functions import PowerSeries
from .interpolation import InterpolationProblem, PointSequence
from .weights import Weight

__all__ = [
    "SchemaError",
    "load_json",
    "dumps",
    "parse_complex",
    "complex_to_json",
    "weight_from_json",
    "weight_to_json",
    "exhaustion_from_json",
    "exhaustion_to_json",
    "problem_from_json",
    "problem_to_json",
    "corona_from_json",
]


class SchemaError(ValueError):
    """Input JSON does not match the expected schema."""


def load_json(path):
    """Read a JSON file; a CLI report envelope is unwrapped to its ``result``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc
    if isinstance(obj, dict) and "command" in obj and "result" in obj:
        return obj["result"]
    return obj


def _require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"field {key!r} has type {type(value).__name__}")
    return value


def parse_complex(x) -> complex:
    if isinstance(x, dict):
        return complex(float(_require(x, "re")), float(x.get("im", 0.0)))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    raise SchemaError(f"cannot read {x!r} as a complex number")


def complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _float_list(values, name):
    if not isinstance(values, list) or not values:
        raise SchemaError(f"{name} must be a non-empty list")
    try:
        return np.array([float(v) for v in values])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{name} must contain numbers") from exc


def weight_from_json(obj) -> Weight:
    n = _require(obj, "n", int)
    samples = _float_list(_require(obj, "samples"), "samples")
    if samples.size != n:
        raise SchemaError(f"n = {n} but {samples.size} samples given")
    w = Weight(CircleGrid(n), samples)
    if obj.get("normalized", False) and abs(w.mass - 1) > 1e-9:
        raise SchemaError(f"weight marked normalized has mass {w.mass:.17g}")
    return w


def weight_to_json(w: Weight) -> dict:
    return {
        "n": w.grid.n,
        "samples": [float(v) for v in w.values],
        "normalized": bool(abs(w.mass - 1) <= 1e-9),
    }


def exhaustion_from_json(obj) -> Exhaustion:
    rings, caps = [], []
    for entry in obj.get("rings", []) if isinstance(obj, dict) else []:
        density = _float_list(_require(entry, "density"), "density")
        rings.append(Ring(float(_require(entry, "r")), CircleGrid(density.size), density))
        cap = entry.get("cap")
        caps.append(None if cap is None else float(cap))
    atoms = [
        Atom(complex(float(_require(a, "re")), float(_require(a, "im"))), float(_require(a, "mass")))
        for a in (obj.get("atoms", []) if isinstance(obj, dict) else [])
    ]
    if not rings and not atoms:
        raise SchemaError("exhaustion needs at least one ring or atom")
    has_caps = any(c is not None for c in caps)
    return Exhaustion(DiskMeasure(rings, atoms), caps=tuple(caps) if has_caps else None)


def exhaustion_to_json(e: Exhaustion) -> dict:
    return {
        "rings": [
            {"r": r.radius, "density": [float(v) for v in r.density], "cap": cap}
            for r, cap in zip(e.measure.rings, e.ring_caps())
        ],
        "atoms": [
            {"re": a.point.real, "im": a.point.imag, "mass": a.mass} for a in e.measure.atoms
        ],
    }


def problem_from_json(obj) -> InterpolationProblem:
    points = [parse_complex(x) for x in _require(obj, "points", list)]
    targets = [parse_complex(x) for x in _require(obj, "targets", list)]
    if len(points) != len(targets):
        raise SchemaError("points and targets differ in length")
    return InterpolationProblem(PointSequence(np.array(points)), np.array(targets))


def problem_to_json(prob: InterpolationProblem) -> dict:
    return {
        "points": [complex_to_json(z) for z in prob.points],
        "targets": [complex_to_json(s) for s in prob.targets],
    }


def corona_from_json(obj):
    """Returns ``(f1, f2, weight)``; ``weight`` is ``None`` for ``"classical"``."""
    f1 = PowerSeries([parse_complex(c) for c in _require(obj, "f1", list)])
    f2 = PowerSeries([parse_complex(c) for c in _require(obj, "f2", list)])
    w = obj.get("weight", "classical")
    if w == "classical":
        return f1, f2, None
    if not isinstance(w, dict):
        raise SchemaError('weight must be a weight object or "classical"')
    return f1, f2, weight_from_json(w)


def _plain(obj):
    """Convert numpy scalars, arrays and complex numbers to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_to_json(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


class _Float17(float):
    def __repr__(self):
        if not math.isfinite(self):
            return "NaN" if math.isnan(self) else ("Infinity" if self > 0 else "-Infinity")
        text = format(float(self), ".17g")
        return text if any(c in text for c in ".e") else text + ".0"


def dumps(obj, indent: int | None = 2) -> str:
    """Serialize with every float written as 17 significant digits."""
    plain = _plain(obj)
    return _dump_value(plain, indent, 0)


def _dump_value(obj, indent, level):
    # small hand-rolled writer: json's C encoder ignores float.__repr__ overrides
    if isinstance(obj, float):
        return repr(_Float17(obj))
    if obj is None or isinstance(obj, (bool, int, str)):
        return json.dumps(obj)
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump_value(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + ",".join(items) + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_dump_value(v, indent, level) for v in obj) + "]"
        items = [f"{pad}{_dump_value(v, indent, level + 1)}" for v in obj]
        return "[" + ",".join(items) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
