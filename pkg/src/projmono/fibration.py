"""From (hypersurface, center) to a one-parameter fiber family over a line.

The projection from ``P`` is restricted to a generic line ``s -> A + s B`` of
the target hyperplane.  Over the base point ``s`` the fiber is cut out by the
univariate polynomial ``f(s, t) = F(A + s B + t P)``.  Its roots are the
points of ``X`` on the line through ``P``; the branch points are the zeros of
the discriminant in ``s``.

For an inner center ``F(P) = 0`` kills the ``t^d`` coefficient: the center
sits at ``t = infinity`` and dropping that coefficient removes it, leaving a
degree ``d - 1`` family.  ``B`` is then chosen in the tangent hyperplane of
``X`` at ``P`` so the new leading coefficient ``grad F(P) . A`` does not
depend on ``s``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .config import Tolerances, resolve
from .exceptions import (
    DeflationError,
    DegenerateConfiguration,
    InputError,
    UnsupportedCenter,
)
from .polycore import (
    HomogeneousPoly,
    UnivariatePoly,
    discriminant_on_line,
    discriminant_roots,
    normalize_point,
    roots,
)

__all__ = [
    "CenterKind",
    "ProjectionInstance",
    "FiberFamily",
    "BranchPointSet",
    "Petal",
    "LoopPlan",
    "GenericityReport",
    "complex_gaussian",
    "classify_center",
    "build_projection",
    "slice_to_family",
    "slice_with_frame",
    "branch_points",
    "plan_loops",
    "genericity_report",
]

MAX_RESEEDS = 5


class CenterKind(str, enum.Enum):
    INNER = "inner"
    OUTER = "outer"


def complex_gaussian(rng, size):
    """Standard circular complex Gaussian samples."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class ProjectionInstance:
    surface: HomogeneousPoly
    center: np.ndarray
    center_kind: CenterKind
    hyperplane: np.ndarray  # normal vector h, target is {h . x = 0}
    origin: np.ndarray  # A, on the hyperplane
    direction: np.ndarray  # B, on the hyperplane
    effective_degree: int
    center_value: float

    @property
    def degree(self):
        return self.surface.degree

    @property
    def ambient_dim(self):
        return self.surface.num_vars - 1


@dataclass(frozen=True, eq=False)
class FiberFamily:
    """``f(s, t) = sum_k sum_j coeff_matrix[k, j] s^j t^k``.

    ``origin``/``direction``/``center`` are ``None`` for families given
    directly by coefficients (no ambient hypersurface).
    """

    coeff_matrix: np.ndarray
    origin: np.ndarray | None = None
    direction: np.ndarray | None = None
    center: np.ndarray | None = None
    deflation_residual: float = 0.0
    working_radius: float = 1.5

    def __post_init__(self):
        C = np.asarray(self.coeff_matrix, dtype=complex)
        if C.ndim != 2 or C.shape[0] < 2:
            raise InputError("coefficient matrix must be 2-D with fiber degree >= 1")
        C = C.copy()
        C.flags.writeable = False
        object.__setattr__(self, "coeff_matrix", C)
        e = C.shape[1]
        ds = C[:, 1:] * np.arange(1, e) if e > 1 else np.zeros((C.shape[0], 1), dtype=complex)
        object.__setattr__(self, "_ds", ds)
        object.__setattr__(self, "_spow", np.arange(e))
        object.__setattr__(self, "_tpow", np.arange(C.shape[0]))
        object.__setattr__(self, "_tder", np.arange(1, C.shape[0]))

    @classmethod
    def from_polys(cls, coeff_polys, **kw):
        """Build from t-coefficients given as ascending s-coefficient sequences."""
        e = max(len(c) for c in coeff_polys)
        C = np.zeros((len(coeff_polys), e), dtype=complex)
        for k, c in enumerate(coeff_polys):
            C[k, : len(c)] = c
        return cls(C, **kw)

    @property
    def fiber_degree(self) -> int:
        return self.coeff_matrix.shape[0] - 1

    @property
    def s_degree(self) -> int:
        return self.coeff_matrix.shape[1] - 1

    def coeff_polys(self) -> list[UnivariatePoly]:
        return [UnivariatePoly(row) for row in self.coeff_matrix]

    def coefficients_at(self, s) -> np.ndarray:
        """t-coefficients (ascending) at each base value; shape ``(len(s), m + 1)``."""
        s = np.atleast_1d(np.asarray(s, dtype=complex))
        V = s[:, None] ** np.arange(self.coeff_matrix.shape[1])
        return V @ self.coeff_matrix.T

    def fiber(self, s) -> UnivariatePoly:
        # no trimming: far out in s the leading coefficient is tiny relative to c_0 but exact
        return UnivariatePoly(self.coefficients_at(s)[0], threshold=0.0)

    def fiber_roots(self, s) -> np.ndarray:
        c = self.coefficients_at(s)[0]
        if self.fiber_degree == 1:
            return np.array([-c[0] / c[1]])
        return roots(UnivariatePoly(c, threshold=0.0))

    def __call__(self, s, t):
        return self.evaluate(s, t)[0]

    def evaluate(self, s, t):
        """``(f, f_s, f_t)`` at a single base value ``s`` for an array of roots ``t``."""
        t = np.asarray(t, dtype=complex)
        sp = s ** self._spow
        c = self.coeff_matrix @ sp
        cs = self._ds @ sp[: self._ds.shape[1]]
        T = t[..., None] ** self._tpow
        f = T @ c
        fs = T @ cs
        ft = T[..., :-1] @ (c[1:] * self._tder)
        return f, fs, ft

    def second_derivatives(self, s, t):
        """``(f_st, f_tt)`` at one point."""
        sp = s ** np.arange(self.coeff_matrix.shape[1])
        c = self.coeff_matrix @ sp
        cs = self._ds @ sp[: self._ds.shape[1]]
        k = np.arange(c.size)
        fst = np.sum(cs[1:] * k[1:] * t ** (k[1:] - 1))
        ftt = np.sum(c[2:] * k[2:] * (k[2:] - 1) * t ** (k[2:] - 2)) if c.size > 2 else 0j
        return fst, ftt

    def pencil_map(self, s, t):
        if self.origin is None:
            raise InputError("family has no ambient parametrization")
        s = np.asarray(s, dtype=complex)[..., None]
        t = np.asarray(t, dtype=complex)[..., None]
        return self.origin + s * self.direction + t * self.center

    def rescaled(self, factor: float, working_radius: float | None = None) -> "FiberFamily":
        """Same family in the coordinate ``s' = s / factor``."""
        C = self.coeff_matrix * factor ** np.arange(self.coeff_matrix.shape[1])
        return FiberFamily(
            C,
            origin=self.origin,
            direction=None if self.direction is None else self.direction * factor,
            center=self.center,
            deflation_residual=self.deflation_residual,
            working_radius=self.working_radius if working_radius is None else working_radius,
        )


@dataclass(frozen=True, eq=False)
class BranchPointSet:
    points: np.ndarray
    simple_flags: np.ndarray
    multiplicities: np.ndarray
    min_separation: float
    discriminant: UnivariatePoly | None = None

    def __len__(self):
        return len(self.points)

    @property
    def multiplicity_pattern(self) -> tuple[int, ...]:
        return tuple(sorted(int(m) for m in self.multiplicities))


@dataclass(frozen=True, eq=False)
class Petal:
    branch_point: complex
    radius: float
    approach: np.ndarray  # polyline from the basepoint to the start of the circle

    @property
    def start(self) -> complex:
        return complex(self.approach[-1])


@dataclass(frozen=True, eq=False)
class LoopPlan:
    basepoint: complex
    petals: tuple[Petal, ...]
    infinity_radius: float


@dataclass(frozen=True)
class GenericityReport:
    generic: bool
    lc_min_modulus: float
    all_simple: bool
    min_separation: float
    deflation_residual: float
    multiplicity_pattern: tuple[int, ...]
    reasons: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self):
        return {
            "generic": self.generic,
            "lc_min_modulus": self.lc_min_modulus,
            "all_simple": self.all_simple,
            "min_separation": self.min_separation,
            "deflation_residual": self.deflation_residual,
            "multiplicity_pattern": list(self.multiplicity_pattern),
            "reasons": list(self.reasons),
        }


# ---------------------------------------------------------------------------
# projection setup
# ---------------------------------------------------------------------------


def classify_center(F: HomogeneousPoly, P, tol: Tolerances | None = None):
    """``(kind, |F(P)|)`` with F unit-scaled and P max-norm normalized.

    Raises :class:`UnsupportedCenter` in the ambiguous band and for singular
    points of ``X``.
    """
    tol = resolve(tol)
    F = F.unit_scaled()
    P = normalize_point(P)
    if P.size != F.num_vars:
        raise InputError(f"center has {P.size} coordinates, expected {F.num_vars}")
    value = float(abs(F.eval(P)))
    if value < tol.inner:
        grad = F.eval_gradient(P)
        if np.max(np.abs(grad)) < tol.singular_center:
            raise UnsupportedCenter("center is a singular point of the hypersurface")
        return CenterKind.INNER, value
    if value < tol.ambiguous:
        raise UnsupportedCenter(
            f"|F(P)| = {value:.2e} is too close to the hypersurface to classify the center"
        )
    return CenterKind.OUTER, value


def build_projection(F: HomogeneousPoly, P, seed: int = 0, tol=None, hyperplane=None) -> ProjectionInstance:
    """Classify the center and sample a target frame and a generic line in it."""
    tol = resolve(tol)
    if F.degree < 1 or not F.terms:
        raise InputError("need a nonzero form of positive degree")
    kind, value = classify_center(F, P, tol)
    F = F.unit_scaled()
    P = normalize_point(P)
    nv = F.num_vars
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0x5EED])
    grad = F.eval_gradient(P) if kind is CenterKind.INNER else None

    for _ in range(100):
        h = complex_gaussian(rng, nv) if hyperplane is None else np.asarray(hyperplane, dtype=complex)
        hP = h @ P
        if abs(hP) / (np.linalg.norm(h) * np.linalg.norm(P)) <= tol.frame_degeneracy:
            if hyperplane is not None:
                raise InputError("target hyperplane passes (nearly) through the center")
            continue
        A = complex_gaussian(rng, nv)
        B = complex_gaussian(rng, nv)
        if kind is CenterKind.INNER:
            gA = grad @ A
            if abs(gA) <= tol.frame_degeneracy * np.linalg.norm(grad) * np.linalg.norm(A):
                continue
            B = B - (grad @ B) / gA * A
        # push A, B into the hyperplane along P
        A = A - (h @ A) / hP * P
        B = B - (h @ B) / hP * P
        if np.linalg.matrix_rank(np.stack([A, B, P]), tol=1e-8) < 3:
            continue
        break
    else:
        raise DegenerateConfiguration("could not sample a non-degenerate target frame")

    eff = F.degree if kind is CenterKind.OUTER else F.degree - 1
    return ProjectionInstance(
        surface=F,
        center=P,
        center_kind=kind,
        hyperplane=h,
        origin=A,
        direction=B,
        effective_degree=eff,
        center_value=value,
    )


def slice_with_frame(F: HomogeneousPoly, P, origin, direction, inner: bool, tol=None) -> FiberFamily:
    """Coefficients of ``F(origin + s direction + t P)`` by 2-D FFT interpolation.

    With ``inner`` the ``t^d`` row (the center at ``t = infinity``) is dropped
    after checking it is zero to ``tol.deflation``.
    """
    tol = resolve(tol)
    d = F.degree
    n = d + 1
    w = np.exp(2j * np.pi * np.arange(n) / n)
    pts = origin + w[:, None, None] * direction + w[None, :, None] * np.asarray(P)
    vals = F.eval(pts)  # vals[j, k] at s = w_j, t = w_k
    coef = np.fft.fft2(vals) / (n * n)  # coef[j, k] of s^j t^k
    C = coef.T.copy()
    scale = np.max(np.abs(C))
    C[np.abs(C) < tol.zero_threshold * scale] = 0
    residual = 0.0
    # the leading row is known in closed form: F(P), or grad F(P) . (A + s B) after deflation
    C[-1] = 0
    if inner:
        residual = float(max(np.max(np.abs(coef[:, -1])) / scale, abs(F.eval(P)) / F.coefficient_scale))
        if residual > tol.deflation:
            raise DeflationError(
                f"center root residual {residual:.2e} exceeds {tol.deflation:.1e}"
            )
        C = C[:-1]
        g = F.eval_gradient(P)
        C[-1] = 0
        C[-1, 0] = g @ origin
        lin = g @ direction
        # the frame's direction is tangent at the center; drop the rounding residue
        C[-1, 1] = 0.0 if abs(lin) <= 1e-9 * np.linalg.norm(g) * np.linalg.norm(direction) else lin
    else:
        C[-1, 0] = F.eval(P)
    return FiberFamily(
        C,
        origin=np.asarray(origin, dtype=complex),
        direction=np.asarray(direction, dtype=complex),
        center=np.asarray(P, dtype=complex),
        deflation_residual=residual,
    )


def _leading_ok(fam: FiberFamily, radius: float, tol: Tolerances, check_size: bool = True) -> bool:
    lead = UnivariatePoly(fam.coeff_matrix[-1])
    scale = np.max(np.abs(fam.coeff_matrix))
    if check_size and abs(lead.coeffs).max() <= tol.zero_threshold * scale:
        return False
    if lead.degree == 0:
        return True
    return bool(np.all(np.abs(roots(lead)) > radius))


OUTLIER_RATIO = 50.0


def slice_to_family(inst: ProjectionInstance, seed: int = 0, tol=None, rescale: bool = True) -> FiberFamily:
    """Fiber family of ``inst`` over its line, with ``s`` rescaled so the
    largest branch point has modulus one (working disk radius 1.5).

    If that point is more than ``OUTLIER_RATIO`` times the median modulus,
    the median is used as the unit instead and the working disk grows to
    cover the outlier."""
    tol = resolve(tol)
    inner = inst.center_kind is CenterKind.INNER
    fam = slice_with_frame(inst.surface, inst.center, inst.origin, inst.direction, inner, tol)
    for attempt in range(MAX_RESEEDS):
        if _leading_ok(fam, 1e6, tol):
            break
        inst = build_projection(inst.surface, inst.center, seed=seed + 7919 * (attempt + 1), tol=tol)
        fam = slice_with_frame(inst.surface, inst.center, inst.origin, inst.direction, inner, tol)
    else:
        raise DegenerateConfiguration("leading coefficient vanishes inside the working disk")
    if not np.any(np.abs(fam.coeff_matrix[:-1]) > 0):
        raise DegenerateConfiguration("the form vanishes identically on the sliced plane")
    if rescale and fam.fiber_degree >= 2:
        pilot = branch_points(fam, tol, pilot=True)
        if len(pilot):
            mods = np.abs(pilot.points)
            big = float(mods.max())
            factor = big
            # a lone far point (center near a flex) would crush the rest toward 0
            if big > OUTLIER_RATIO * float(np.median(mods)) > 0:
                factor = float(np.median(mods))
            fam = fam.rescaled(factor, working_radius=max(1.5, 1.5 * big / factor))
    # rescaling stretches the s-columns, so only the zeros of lc are re-checked
    if not _leading_ok(fam, fam.working_radius, tol, check_size=False):
        raise DegenerateConfiguration("leading coefficient vanishes inside the working disk")
    return fam


# ---------------------------------------------------------------------------
# branch points
# ---------------------------------------------------------------------------


def _cluster(points, link, tight=None, refined=None):
    n = len(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            thr = link
            if refined is not None and refined[i] and refined[j]:
                thr = tight
            if abs(points[i] - points[j]) < thr:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _equilibrated_cond(J: np.ndarray) -> float:
    """Condition number after scaling rows, then columns, to unit max-norm."""
    r = np.max(np.abs(J), axis=1, keepdims=True)
    if np.any(r == 0):
        return np.inf
    J = J / r
    c = np.max(np.abs(J), axis=0, keepdims=True)
    if np.any(c == 0):
        return np.inf
    return float(np.linalg.cond(J / c))


def _polish_branch_point(fam: FiberFamily, s: complex, iters: int = 8) -> tuple[complex, bool]:
    """Newton on ``f = f_t = 0`` in ``(s, t)`` from the fiber's closest root pair.

    Returns the refined ``s`` and whether Newton converged with a
    nonsingular Jacobian, i.e. the fiber has an ordinary double point there.
    """
    r = fam.fiber_roots(s)
    if r.size < 2:
        return s, False
    dist = np.abs(r[:, None] - r[None, :]) + np.diag(np.full(r.size, np.inf))
    i, j = np.unravel_index(np.argmin(dist), dist.shape)
    t = 0.5 * (r[i] + r[j])
    s0 = s
    prev = np.inf
    for _ in range(iters):
        f, fs, ft = fam.evaluate(s, t)
        fst, ftt = fam.second_derivatives(s, t)
        J = np.array([[fs, ft], [fst, ftt]])
        if _equilibrated_cond(J) > 1e10:
            return s0, False
        ds, dt = np.linalg.solve(J, -np.array([f, ft]))
        step = abs(ds)
        s, t = s + ds, t + dt
        scale = max(1.0, abs(s))
        # converged, or stalled at rounding level
        if step < 1e-13 * scale or (step > 0.25 * prev and step < 1e-6 * scale):
            return s, True
        prev = step
    return s, False


def branch_points(fam: FiberFamily, tol=None, pilot: bool = False) -> BranchPointSet:
    """Zeros of the discriminant on the line, clustered and polished.

    Discriminant roots closer than ``tol.branch_cluster`` (relative to the
    largest modulus, floored at 1) form one branch point whose multiplicity
    is the cluster size.  Simple points are refined by Newton on
    ``f = f_t = 0``.  The zeros themselves come from
    :func:`discriminant_roots`; the interpolated discriminant is kept on the
    result for reporting.  ``pilot`` skips refinement and is used only to fix
    the scale of ``s``.
    """
    tol = resolve(tol)
    if fam.fiber_degree < 2:
        empty = np.zeros(0)
        return BranchPointSet(empty.astype(complex), empty.astype(bool), empty.astype(int), np.inf, UnivariatePoly([1.0]))
    disc = discriminant_on_line(fam, radius=1.0)
    r = discriminant_roots(fam.coeff_matrix)
    if pilot or r.size == 0:
        n = r.size
        return BranchPointSet(r, np.ones(n, bool), np.ones(n, int), np.inf if n < 2 else np.nan, disc)
    scale = max(1.0, float(np.max(np.abs(r))))
    link = tol.branch_cluster * scale
    refined = [_polish_branch_point(fam, z) for z in r]
    polished = np.array([z for z, _ in refined])
    if r.size > 1:
        gap = np.min(np.abs(r[:, None] - r[None, :]) + np.diag(np.full(r.size, np.inf)), axis=1)
    else:
        gap = np.full(r.size, np.inf)
    ok = np.array([flag for _, flag in refined]) & (np.abs(polished - r) < np.minimum(0.5 * gap, 0.1))
    r = np.where(ok, polished, r)
    # refined points are distinct unless Newton sent two of them to the same place;
    # unrefined ones are grouped with the coarse link
    groups = _cluster(r, link, tight=1e-8 * scale, refined=ok)
    pts, simple, mult = [], [], []
    for g in groups:
        pts.append(complex(np.mean(r[g])))
        simple.append(len(g) == 1 and bool(ok[g[0]]))
        mult.append(len(g))
    pts = np.array(pts)
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    if len(pts) > 1:
        dist = np.abs(pts[:, None] - pts[None, :]) + np.diag(np.full(len(pts), np.inf))
        min_sep = float(dist.min())
    else:
        min_sep = float("inf")
    return BranchPointSet(
        pts, np.array(simple)[order], np.array(mult)[order], min_sep, disc
    )


def genericity_report(fam: FiberFamily, bps: BranchPointSet, tol=None) -> GenericityReport:
    tol = resolve(tol)
    theta = np.exp(2j * np.pi * np.arange(64) / 64)
    lead = UnivariatePoly(fam.coeff_matrix[-1])
    lc_min = float(np.min(np.abs(lead(fam.working_radius * theta))))
    scale = max(1.0, float(np.max(np.abs(bps.points)))) if len(bps) else 1.0
    reasons = []
    all_simple = bool(np.all(bps.simple_flags))
    if not all_simple:
        reasons.append("non-simple discriminant zeros")
    if len(bps) > 1 and bps.min_separation < 1e-8 * scale:
        reasons.append("branch points numerically indistinguishable")
    if lc_min == 0 or not _leading_ok(fam, fam.working_radius, tol, check_size=False):
        reasons.append("leading coefficient vanishes on the working disk")
    if fam.deflation_residual > tol.deflation:
        reasons.append("deflation residual above tolerance")
    return GenericityReport(
        generic=not reasons,
        lc_min_modulus=lc_min,
        all_simple=all_simple,
        min_separation=bps.min_separation,
        deflation_residual=fam.deflation_residual,
        multiplicity_pattern=bps.multiplicity_pattern,
        reasons=tuple(reasons),
    )


# ---------------------------------------------------------------------------
# loop planning
# ---------------------------------------------------------------------------


def _arc(center, radius, a0, a1, max_step=np.pi / 16):
    n = max(2, int(np.ceil(abs(a1 - a0) / max_step)))
    ang = np.linspace(a0, a1, n + 1)[1:-1]
    return center + radius * np.exp(1j * ang)


def _approach_path(s0, target, obstacles):
    """Polyline from ``s0`` to ``target`` detouring around obstacle disks.

    Each obstacle ``(center, radius)`` crossed by the straight segment is
    bypassed along its boundary on the same side the segment passes it, so
    the path stays homotopic to the straight one with the obstacle pushed off
    it.  An exact hit is bypassed with the obstacle on the right.
    """
    d = target - s0
    L = abs(d)
    u = d / L
    hits = []
    for c, rho in obstacles:
        w = (c - s0) / u  # obstacle in the frame where the segment is [0, L] on the real axis
        if abs(w.imag) >= rho:
            continue
        half = np.sqrt(rho * rho - w.imag * w.imag)
        a, b = w.real - half, w.real + half
        if b <= 0 or a >= L:
            continue
        hits.append((a, b, c, rho, w))
    hits.sort(key=lambda h: h[0])
    pts = [s0]
    for a, b, c, rho, w in hits:
        p_in = s0 + u * a
        p_out = s0 + u * b
        ang_in = np.angle(p_in - c)
        ang_out = np.angle(p_out - c)
        # obstacle on the right (w.imag <= 0): keep it on the right, i.e. go around it clockwise
        if w.imag <= 0:
            while ang_out >= ang_in:
                ang_out -= 2 * np.pi
        else:
            while ang_out <= ang_in:
                ang_out += 2 * np.pi
        pts.append(p_in)
        pts.extend(_arc(c, rho, ang_in, ang_out))
        pts.append(p_out)
    pts.append(target)
    return np.array(pts, dtype=complex)


def plan_loops(bps: BranchPointSet, seed: int = 0, basepoint: complex | None = None, tol=None) -> LoopPlan:
    """Basepoint and counterclockwise petal loops around every branch point.

    The basepoint sits on ``|s| = 1.1 R`` with ``R = max(max |b|, 1) + 1`` at a seeded
    random angle.  Petals are ordered by the angle of ``b - s0`` seen from the
    basepoint (measured from the inward direction), ties by distance.
    """
    tol = resolve(tol)
    pts = np.asarray(bps.points, dtype=complex)
    if pts.size == 0:
        raise InputError("no branch points to plan loops around")
    scale = max(1.0, float(np.max(np.abs(pts))))
    if pts.size > 1:
        dist = np.abs(pts[:, None] - pts[None, :]) + np.diag(np.full(pts.size, np.inf))
        if dist.min() < 1e-8 * scale:
            raise DegenerateConfiguration("branch points numerically indistinguishable")
        nearest = dist.min(axis=1)
    else:
        nearest = np.full(1, np.inf)
    R = max(float(np.max(np.abs(pts))), 1.0) + 1.0
    if basepoint is None:
        rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0x100B])
        s0 = 1.1 * R * np.exp(2j * np.pi * rng.random())
    else:
        s0 = complex(basepoint)
        if abs(s0) <= R:
            raise InputError("basepoint must lie outside the disk |s| <= R")
    radii = np.minimum(0.4 * nearest, 0.5)
    radii = np.minimum(radii, 0.5 * np.abs(pts - s0))
    inward = -s0 / abs(s0)
    angles = np.angle((pts - s0) / inward)
    order = sorted(range(pts.size), key=lambda j: (angles[j], abs(pts[j] - s0)))
    petals = []
    for j in order:
        b, r = pts[j], radii[j]
        start = b + r * (s0 - b) / abs(s0 - b)
        obstacles = [(pts[k], radii[k]) for k in range(pts.size) if k != j]
        petals.append(Petal(complex(b), float(r), _approach_path(s0, start, obstacles)))
    return LoopPlan(basepoint=complex(s0), petals=tuple(petals), infinity_radius=abs(s0))
