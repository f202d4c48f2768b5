"""Continuation of fiber roots along paths in the base line.

Roots are transported with an RK4 predictor on the Davidenko equation
``dt/ds = -f_s / f_t`` and a Newton corrector.  A step is rejected (and
halved) when the corrector starts far from the predicted root, when a root
moves by a sizeable fraction of the current root separation, or when two
roots come closer than the collision threshold.  These guards keep every
root on its own sheet.

Permutations follow the convention of :mod:`projmono.permgroup`: label ``i``
at the basepoint is sent to the label of the basepoint root where its path
ends, and ``p * q`` applies ``p`` first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .config import resolve
from .exceptions import AmbiguousMatching, InputError, TrackingError
from .fibration import FiberFamily, LoopPlan, Petal
from .permgroup import Permutation

__all__ = [
    "FiberState",
    "LoopResult",
    "MonodromyGenerators",
    "initial_state",
    "track_segment",
    "track_path",
    "circle_path",
    "match_roots",
    "track_loop",
    "track_infinity_loop",
    "monodromy_generators",
]

DEFAULT_ARC_SEGMENTS = 32
MAX_CORRECTOR_ITERS = 4


@dataclass(frozen=True, eq=False)
class FiberState:
    """Labeled fiber over base position ``s``; ``roots[i]`` carries label ``i``."""

    s: complex
    roots: np.ndarray

    def __post_init__(self):
        r = np.array(self.roots, dtype=complex)
        r.flags.writeable = False
        object.__setattr__(self, "roots", r)
        object.__setattr__(self, "s", complex(self.s))

    @property
    def size(self) -> int:
        return self.roots.size

    def min_separation(self) -> float:
        r = self.roots
        if r.size < 2:
            return np.inf
        d = np.abs(r[:, None] - r[None, :]) + np.diag(np.full(r.size, np.inf))
        return float(d.min())


def _min_gap(r) -> float:
    if r.size < 2:
        return np.inf
    d = np.abs(r[:, None] - r[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _rel_gap(r) -> float:
    """Smallest pairwise gap, each relative to ``max(1, |r_i|, |r_j|)``."""
    if r.size < 2:
        return np.inf
    a = np.maximum(1.0, np.abs(r))
    d = np.abs(r[:, None] - r[None, :]) / np.maximum(a[:, None], a[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _scale(roots) -> float:
    return max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0


def _newton(fam, s, t, iters, tol):
    """Plain Newton on ``f(s, .)``; returns (t, first correction, last correction)."""
    first = last = 0.0
    for k in range(iters):
        f, _, ft = fam.evaluate(s, t)
        if np.any(ft == 0):
            return t, np.inf, np.inf
        dt = f / ft
        t = t - dt
        last = float(np.max(np.abs(dt))) if dt.size else 0.0
        if k == 0:
            first = last
        if last <= tol:
            break
    return t, first, last


def initial_state(fam: FiberFamily, s0: complex, tol=None) -> FiberState:
    """Fiber over ``s0`` with labels assigned by the (real, imag) root order."""
    tol = resolve(tol)
    r = fam.fiber_roots(s0)
    scale = _scale(r)
    r, _, _ = _newton(fam, s0, r, 3, tol.newton * scale)
    r = r[np.lexsort((r.imag, r.real))]
    state = FiberState(s0, r)
    if _rel_gap(r) <= tol.collision:
        raise TrackingError("basepoint fiber has (nearly) colliding roots")
    return state


def _velocity(fam, s, t, ds):
    _, fs, ft = fam.evaluate(s, t)
    return -fs / ft * ds


def track_segment(fam: FiberFamily, state: FiberState, s_target: complex, tol=None) -> FiberState:
    """Transport ``state`` along the straight segment to ``s_target``."""
    tol = resolve(tol)
    s_a = state.s
    delta = complex(s_target) - s_a
    t = np.array(state.roots)
    if delta == 0 or t.size == 0:
        return FiberState(s_target, t)
    scale = _scale(t)
    ntol = tol.newton * scale
    tau, h = 0.0, 1.0
    while tau < 1.0:
        h = min(h, 1.0 - tau)
        if h < tol.step_floor:
            raise TrackingError(
                f"step floor reached at s = {s_a + tau * delta:.6g} (segment fraction {tau:.6f})"
            )
        s0 = s_a + tau * delta
        ok = False
        try:
            with np.errstate(all="raise"):
                dsd = h * delta
                k1 = _velocity(fam, s0, t, dsd)
                k2 = _velocity(fam, s0 + 0.5 * dsd, t + 0.5 * k1, dsd)
                k3 = _velocity(fam, s0 + 0.5 * dsd, t + 0.5 * k2, dsd)
                k4 = _velocity(fam, s0 + dsd, t + k3, dsd)
                pred = t + (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
                s1 = s0 + dsd
                sep = _min_gap(t)
                new, first, last = _newton(fam, s1, pred, MAX_CORRECTOR_ITERS, ntol)
            ok = (
                np.all(np.isfinite(new))
                and first < 0.1 * sep
                and last <= ntol
                and float(np.max(np.abs(new - t))) < 0.3 * sep
                and _rel_gap(new) > tol.collision
            )
        except FloatingPointError:
            ok = False
        if ok:
            t = new
            tau = 1.0 if h >= 1.0 - tau else tau + h
            h *= 2.0 if first < 0.01 * sep else 1.25
        else:
            h *= 0.5
    t, _, _ = _newton(fam, complex(s_target), t, 2, ntol)
    return FiberState(s_target, t)


def track_path(fam: FiberFamily, state: FiberState, path, tol=None) -> FiberState:
    """Track along a polyline; ``path[0]`` must equal ``state.s``."""
    path = np.asarray(path, dtype=complex)
    if path.size == 0:
        return state
    if abs(path[0] - state.s) > 1e-12 * max(1.0, abs(state.s)):
        raise InputError("polyline does not start at the current base position")
    for p in path[1:]:
        state = track_segment(fam, state, p, tol)
    return state


def circle_path(center: complex, start: complex, segments: int = DEFAULT_ARC_SEGMENTS, clockwise: bool = False):
    """Closed polygon through ``start`` around ``center`` (``segments`` chords)."""
    if segments < 3:
        raise InputError("a circle needs at least 3 segments")
    r = start - center
    sign = -1.0 if clockwise else 1.0
    ang = sign * 2 * np.pi * np.arange(segments + 1) / segments
    pts = center + r * np.exp(1j * ang)
    pts[-1] = start
    return pts


def match_roots(final, reference, tol_distance) -> np.ndarray:
    """Bijection ``j = perm[i]`` with ``final[i]`` closest to ``reference[j]``.

    Optimal assignment on pairwise distances.  ``tol_distance`` is a scalar
    or one radius per reference root.  Raises :class:`AmbiguousMatching` if
    a matched distance exceeds its radius or two reference roots are not
    separated by the sum of their radii.
    """
    final = np.asarray(final, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    if final.size != reference.size:
        raise InputError("fibers of different sizes cannot be matched")
    radius = np.broadcast_to(np.asarray(tol_distance, dtype=float), reference.shape)
    cost = np.abs(final[:, None] - reference[None, :])
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(final.size, dtype=int)
    perm[rows] = cols
    excess = cost[rows, cols] - radius[cols]
    if final.size and excess.max() > 0:
        k = int(np.argmax(excess))
        raise AmbiguousMatching(f"matched distance {cost[rows[k], cols[k]]:.3e} exceeds {radius[cols[k]]:.1e}")
    gap = np.abs(reference[:, None] - reference[None, :]) - 2 * np.maximum(radius[:, None], radius[None, :])
    np.fill_diagonal(gap, np.inf)
    if reference.size > 1 and gap.min() <= 0:
        raise AmbiguousMatching("reference roots closer than twice the matching tolerance")
    return perm


def _radii(roots, tol) -> np.ndarray:
    """Matching radius per root: ``collision`` relative to ``max(1, |r|)``."""
    return tol.collision * np.maximum(1.0, np.abs(np.asarray(roots)))


@dataclass(frozen=True)
class LoopResult:
    permutation: Permutation
    arc_segments: int
    match_distance: float


def track_loop(
    fam: FiberFamily,
    base: FiberState,
    petal: Petal,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
    clockwise: bool = False,
    return_path: bool = False,
    tol=None,
    max_refinements: int = 2,
) -> Permutation:
    """Monodromy permutation of one petal loop, in basepoint labels.

    The fiber is carried to the start of the petal circle and around it.
    Since the way back retraces the approach, comparing the fiber after the
    circle with the fiber before it yields the same permutation as returning
    to the basepoint; ``return_path=True`` tracks the way back anyway.
    On ambiguous matching the circle is re-discretized with twice as many
    segments, at most ``max_refinements`` times.
    """
    return _track_loop(fam, base, petal, arc_segments, clockwise, return_path, tol, max_refinements).permutation


def _track_loop(fam, base, petal, arc_segments, clockwise, return_path, tol, max_refinements):
    tol = resolve(tol)
    if abs(complex(petal.approach[0]) - base.s) > 1e-12 * max(1.0, abs(base.s)):
        raise InputError("petal does not start at the basepoint")
    segments = arc_segments
    for attempt in range(max_refinements + 1):
        try:
            at_start = track_path(fam, base, petal.approach, tol)
            circ = circle_path(petal.branch_point, petal.start, segments, clockwise)
            after = track_path(fam, at_start, circ, tol)
            if return_path:
                back = track_path(fam, after, petal.approach[::-1], tol)
                final, reference = back.roots, base.roots
            else:
                final, reference = after.roots, at_start.roots
            perm = match_roots(final, reference, _radii(reference, tol))
            dist = float(np.max(np.abs(final - reference[perm])))
            return LoopResult(Permutation(perm), segments, dist)
        except (AmbiguousMatching, TrackingError):
            if attempt == max_refinements:
                raise
            segments *= 2
    raise AssertionError("unreachable")


def track_infinity_loop(fam: FiberFamily, base: FiberState, arc_segments: int = DEFAULT_ARC_SEGMENTS, clockwise: bool = True, tol=None) -> Permutation:
    """Monodromy of the circle ``|s| = |s0|`` through the basepoint (clockwise by default)."""
    tol = resolve(tol)
    circ = circle_path(0.0, base.s, arc_segments, clockwise)
    after = track_path(fam, base, circ, tol)
    perm = match_roots(after.roots, base.roots, _radii(base.roots, tol))
    return Permutation(perm)


@dataclass(frozen=True, eq=False)
class MonodromyGenerators:
    basepoint: FiberState
    petals: tuple[Permutation, ...]
    infinity: Permutation
    relation_holds: bool
    arc_segments: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.basepoint.size


def monodromy_generators(
    fam: FiberFamily,
    plan: LoopPlan,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
    clockwise: bool = False,
    label_order=None,
    tol=None,
    check_relation: bool = True,
) -> MonodromyGenerators:
    """One permutation per petal (plan order) plus the infinity loop.

    ``label_order`` relabels the basepoint fiber: root ``label_order[i]`` of
    the default (real, imag) order gets label ``i``.  The relation
    ``(product of petals) * infinity = identity`` is evaluated and recorded;
    with ``check_relation`` a failure raises :class:`TrackingError`.
    """
    tol = resolve(tol)
    base = initial_state(fam, plan.basepoint, tol)
    if label_order is not None:
        order = np.asarray(label_order, dtype=int)
        if sorted(order.tolist()) != list(range(base.size)):
            raise InputError("label_order must be a permutation of the basepoint labels")
        base = FiberState(base.s, base.roots[order])
    results = [
        _track_loop(fam, base, p, arc_segments, clockwise, False, tol, 2) for p in plan.petals
    ]
    perms = tuple(r.permutation for r in results)
    inf = track_infinity_loop(fam, base, arc_segments, clockwise=not clockwise, tol=tol)
    # clockwise petals are the inverses of the counterclockwise ones, so the
    # relation holds with the product taken in reverse order
    prod = Permutation.identity(base.size)
    for p in reversed(perms) if clockwise else perms:
        prod = prod * p
    holds = (prod * inf).is_identity()
    if check_relation and not holds:
        raise TrackingError("petal product times infinity loop is not the identity")
    return MonodromyGenerators(base, perms, inf, holds, tuple(r.arc_segments for r in results))
