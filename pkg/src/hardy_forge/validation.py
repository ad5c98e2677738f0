"""Input validation helpers shared by the numerical modules and the estimator."""

import numpy as np

__all__ = [
    "check_grid_size",
    "check_disk_points",
    "check_positive_samples",
    "check_exponent",
]


def check_grid_size(n, minimum=256):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"grid size must be an integer, got {type(n).__name__}")
    if n < minimum or n & (n - 1):
        raise ValueError(f"grid size must be a power of two >= {minimum}, got {n}")
    return int(n)


def check_disk_points(z, closed=False, allow_origin=True):
    """Return ``z`` as a complex ndarray, rejecting points outside the disk.

    ``closed=True`` admits the unit circle itself (up to a few ulps).
    """
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise ValueError("points must be finite")
    r = np.abs(z)
    if closed:
        bad = r > 1 + 1e-12
    else:
        bad = r >= 1
    if np.any(bad):
        where = "closed" if closed else "open"
        raise ValueError(f"points must lie in the {where} unit disk, max |z| = {r.max()}")
    if not allow_origin and np.any(r == 0):
        raise ValueError("the origin is not allowed here")
    return z


def check_positive_samples(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        if np.any(values.imag != 0):
            raise ValueError("weight samples must be real")
        values = values.real
    values = values.astype(float)
    if values.ndim != 1:
        raise ValueError("weight samples must be one-dimensional")
    if not np.all(np.isfinite(values)):
        raise ValueError("weight samples must be finite")
    if np.any(values <= 0):
        raise ValueError(
            f"weight samples must be strictly positive, min = {values.min()}"
        )
    return values


def check_exponent(p, minimum=0.0, inclusive=False):
    p = float(p)
    ok = p >= minimum if inclusive else p > minimum
    if not ok or not np.isfinite(p):
        op = ">=" if inclusive else ">"
        raise ValueError(f"exponent must be finite and {op} {minimum}, got {p}")
    return p
