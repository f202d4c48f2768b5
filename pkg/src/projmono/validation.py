"""Input checks for complex-valued data.

The stock scikit-learn array checks reject complex input, so points and
hypersurfaces are validated here.  Every failure raises :class:`InputError`.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InputError
from .polycore import HomogeneousPoly, normalize_point, parse_poly

__all__ = ["check_seed", "check_hypersurface", "check_point", "check_points", "check_degree"]

SEED_MAX = 2**64 - 1


def check_seed(seed) -> int:
    if isinstance(seed, (bool, np.bool_)) or not isinstance(seed, (int, np.integer)):
        raise InputError(f"seed must be an integer, got {type(seed).__name__}")
    seed = int(seed)
    if not 0 <= seed <= SEED_MAX:
        raise InputError("seed must fit in an unsigned 64-bit integer")
    return seed


def check_degree(d, minimum: int = 2) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise InputError("degree must be an integer")
    if d < minimum:
        raise InputError(f"degree must be at least {minimum}, got {d}")
    return int(d)


def check_hypersurface(F) -> HomogeneousPoly:
    """Accept a :class:`HomogeneousPoly` or its text form; degree must exceed one."""
    if isinstance(F, str):
        F = parse_poly(F)
    if not isinstance(F, HomogeneousPoly):
        raise InputError("surface must be a HomogeneousPoly or polynomial text")
    if not F.terms:
        raise InputError("the zero form does not define a hypersurface")
    check_degree(F.degree)
    if not np.all(np.isfinite(F._coeffs)):
        raise InputError("coefficients must be finite")
    return F


def check_point(P, num_vars: int | None = None) -> np.ndarray:
    """Finite, nonzero complex vector of the right length, normalized to unit norm."""
    try:
        x = np.asarray(P, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"point is not numeric: {exc}") from None
    if x.ndim != 1:
        raise InputError("a point must be a 1-D coordinate vector")
    if num_vars is not None and x.size != num_vars:
        raise InputError(f"point has {x.size} coordinates, expected {num_vars}")
    if not np.all(np.isfinite(x)):
        raise InputError("point coordinates must be finite")
    if not np.any(x):
        raise InputError("the zero vector is not a projective point")
    return normalize_point(x)


def check_points(X, num_vars: int | None = None) -> np.ndarray:
    """2-D array of points, one per row."""
    try:
        arr = np.asarray(X, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"points are not numeric: {exc}") from None
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise InputError("expected a non-empty 2-D array of points")
    return np.stack([check_point(row, num_vars) for row in arr])
