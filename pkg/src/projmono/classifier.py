"""End-to-end monodromy verdicts, random instances and the degeneration test."""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import Tolerances, resolve
from .exceptions import (
    AmbiguousMatching,
    DegenerateConfiguration,
    InputError,
    NonConvergence,
    ProjMonoError,
    TrackingError,
    UnsupportedCenter,
)
from .fibration import (
    CenterKind,
    FiberFamily,
    GenericityReport,
    branch_points,
    build_projection,
    classify_center,
    complex_gaussian,
    genericity_report,
    plan_loops,
    slice_to_family,
    slice_with_frame,
)
from .permgroup import PermGroup, Permutation, block_systems, is_transitive, k_transitivity
from .polycore import HomogeneousPoly, UnivariatePoly, monomial_exponents, normalize_point, roots
from .validation import check_hypersurface, check_point, check_seed
from .tracker import DEFAULT_ARC_SEGMENTS, initial_state, match_roots, monodromy_generators

__all__ = [
    "MonodromyReport",
    "SweepSummary",
    "DegenerationExperiment",
    "monodromy_report",
    "random_general_hypersurface",
    "random_outer_point",
    "random_inner_point",
    "uniform_sweep",
    "degeneration_experiment",
    "decomposability_report",
    "random_degeneration_data",
    "default_s_values",
]

MAX_RETRIES = 5
FRAME_SEED_STRIDE = 7919
SWEEP_BOUNDS = {"n": (1, 2), "d": (2, 6), "trials": (1, 100)}


def _cplx(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _group_dict(G: PermGroup) -> dict:
    systems = block_systems(G) if is_transitive(G) and G.degree > 2 else []
    return {
        "degree": G.degree,
        "order": str(G.order),
        "generators": [str(g) for g in G.generators],
        "labels": list(G.labels),
        "transitive": is_transitive(G),
        "transitivity": k_transitivity(G),
        "block_systems": [[list(b) for b in s] for s in systems],
    }


@dataclass(frozen=True, eq=False)
class MonodromyReport:
    degree: int
    dimension: int
    center: np.ndarray
    center_kind: CenterKind
    effective_degree: int
    group: PermGroup
    uniform: bool
    seed: int
    tolerances: Tolerances
    infinity: Permutation | None = None
    relation_holds: bool = True
    branch_points: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    genericity: GenericityReport | None = None
    accepted_nonsimple: bool = False
    retries: tuple[dict, ...] = ()
    frame_seed: int = 0
    arc_segments: tuple[int, ...] = ()

    @property
    def labels(self) -> tuple[str, ...]:
        return self.group.labels

    @property
    def petal_cycle_types(self) -> list[list[int]]:
        return [list(g.cycle_type()) for g in self.group.generators]

    def verdict(self) -> str:
        return "UNIFORM" if self.uniform else "NON-UNIFORM"

    def summary(self) -> str:
        G = self.group
        name = f"S{G.degree}" if "symmetric" in G.labels else ", ".join(G.labels)
        return f"{name} (order {G.order}), {self.verdict()}"

    def to_dict(self) -> dict:
        return {
            "tool": "projmono",
            "version": __version__,
            "seed": int(self.seed),
            "tolerances": self.tolerances.as_dict(),
            "instance": {
                "degree": self.degree,
                "dimension": self.dimension,
                "center": [_cplx(z) for z in self.center],
                "center_kind": self.center_kind.value,
                "effective_degree": self.effective_degree,
            },
            "group": _group_dict(self.group),
            "verdict": {"uniform": self.uniform, "label": self.verdict()},
            "diagnostics": {
                "branch_count": int(len(self.branch_points)),
                "branch_points": [_cplx(b) for b in self.branch_points],
                "petal_cycle_types": self.petal_cycle_types,
                "infinity_loop": None if self.infinity is None else str(self.infinity),
                "relation_holds": self.relation_holds,
                "genericity": None if self.genericity is None else self.genericity.as_dict(),
                "accepted_nonsimple": self.accepted_nonsimple,
                "frame_seed": int(self.frame_seed),
                "arc_segments": list(self.arc_segments),
                "retries": list(self.retries),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _only_nonsimple(gen: GenericityReport) -> bool:
    return gen.reasons == ("non-simple discriminant zeros",)


def monodromy_report(
    F: HomogeneousPoly,
    P,
    seed: int = 0,
    tol=None,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
    max_retries: int = MAX_RETRIES,
    label_order=None,
) -> MonodromyReport:
    """Monodromy group of the projection of ``{F = 0}`` from ``P`` and the uniform verdict.

    Frames that fail the genericity checks are re-sampled (at most
    ``max_retries`` attempts, each recorded).  A non-simple discriminant
    pattern is accepted as a property of ``(F, P)`` itself once two
    independent frames show the same multiplicity pattern.
    """
    tol = resolve(tol)
    F = check_hypersurface(F).unit_scaled()
    P = check_point(P, F.num_vars)
    seed = check_seed(seed)
    kind, _ = classify_center(F, P, tol)
    eff = F.degree if kind is CenterKind.OUTER else F.degree - 1
    base = dict(
        degree=F.degree, dimension=F.num_vars - 2, center=P, center_kind=kind,
        effective_degree=eff, seed=seed, tolerances=tol,
    )
    if eff == 1:
        # a single sheet: the trivial group is S_1
        return MonodromyReport(group=PermGroup(1), uniform=True, **base)
    retries = []
    previous_pattern = None
    for attempt in range(max_retries):
        fseed = int(seed) + FRAME_SEED_STRIDE * attempt
        try:
            inst = build_projection(F, P, seed=fseed, tol=tol)
            fam = slice_to_family(inst, seed=fseed, tol=tol)
            bps = branch_points(fam, tol)
            gen = genericity_report(fam, bps, tol)
            accepted = False
            if not gen.generic:
                pattern = bps.multiplicity_pattern
                if _only_nonsimple(gen) and pattern == previous_pattern:
                    accepted = True
                else:
                    previous_pattern = pattern if _only_nonsimple(gen) else None
                    raise DegenerateConfiguration("; ".join(gen.reasons))
            plan = plan_loops(bps, seed=fseed, tol=tol)
            mg = monodromy_generators(fam, plan, arc_segments, label_order=label_order, tol=tol)
        except (DegenerateConfiguration, TrackingError, NonConvergence) as exc:
            retries.append({"attempt": attempt, "frame_seed": fseed, "reason": f"{type(exc).__name__}: {exc}"})
            continue
        G = PermGroup(mg.degree, mg.petals)
        return MonodromyReport(
            group=G,
            uniform="symmetric" in G.labels and G.degree == eff,
            infinity=mg.infinity,
            relation_holds=mg.relation_holds,
            branch_points=bps.points,
            genericity=gen,
            accepted_nonsimple=accepted,
            retries=tuple(retries),
            frame_seed=fseed,
            arc_segments=mg.arc_segments,
            **base,
        )
    raise DegenerateConfiguration(
        f"no usable frame after {max_retries} attempts: " + " | ".join(r["reason"] for r in retries)
    )


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def _restrict_to_line(F: HomogeneousPoly, U, V) -> UnivariatePoly:
    """``u -> F(U + u V)`` by interpolation on roots of unity."""
    d = F.degree
    w = np.exp(2j * np.pi * np.arange(d + 1) / (d + 1))
    vals = F.eval(U[None, :] + w[:, None] * V[None, :])
    return UnivariatePoly(np.fft.fft(vals) / (d + 1), threshold=0.0)


def _smooth_along_lines(F: HomogeneousPoly, rng, lines: int = 20) -> bool:
    # the gradient must not vanish where random lines meet X
    for _ in range(lines):
        U, V = complex_gaussian(rng, F.num_vars), complex_gaussian(rng, F.num_vars)
        for r in roots(_restrict_to_line(F, U, V)):
            x = normalize_point(U + r * V)
            if np.linalg.norm(F.eval_gradient(x)) <= 1e-8 * F.coefficient_scale:
                return False
    return True


def random_general_hypersurface(n: int, d: int, seed: int = 0) -> HomogeneousPoly:
    """Degree-``d`` form in ``n + 2`` variables with i.i.d. complex Gaussian coefficients."""
    if n < 1 or d < 2:
        raise InputError("need n >= 1 and d >= 2")
    nv = n + 2
    count = len(monomial_exponents(nv, d))
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0xF0F])
    for _ in range(MAX_RETRIES):
        F = HomogeneousPoly.from_coefficients(nv, d, complex_gaussian(rng, count))
        if _smooth_along_lines(F, rng):
            return F
    raise DegenerateConfiguration("could not sample a hypersurface passing the smoothness spot-check")


def random_outer_point(F: HomogeneousPoly, seed: int = 0, tol=None) -> np.ndarray:
    tol = resolve(tol)
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0x0C7])
    G = F.unit_scaled()
    for _ in range(100):
        P = normalize_point(complex_gaussian(rng, F.num_vars))
        if abs(G.eval(P)) > 1e3 * tol.ambiguous:
            return P
    raise DegenerateConfiguration("could not sample a point off the hypersurface")


def random_inner_point(F: HomogeneousPoly, seed: int = 0, tol=None) -> np.ndarray:
    """A point of ``X`` where a random line meets it (root chosen at random)."""
    tol = resolve(tol)
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0x1AA])
    G = F.unit_scaled()
    for _ in range(100):
        U, V = complex_gaussian(rng, F.num_vars), complex_gaussian(rng, F.num_vars)
        r = roots(_restrict_to_line(G, U, V))
        P = normalize_point(U + r[int(rng.integers(r.size))] * V)
        if abs(G.eval(P)) < 0.01 * tol.inner:
            return P
    raise DegenerateConfiguration("could not sample a point on the hypersurface")


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSummary:
    n: int
    d: int
    trials: int
    seed: int
    rows: tuple[dict, ...]

    def _count(self, kind):
        return sum(1 for r in self.rows if r["center_kind"] == kind and r["uniform"])

    @property
    def outer_uniform(self) -> int:
        return self._count("outer")

    @property
    def inner_uniform(self) -> int:
        return self._count("inner")

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.rows if not r["uniform"]]

    @property
    def all_uniform(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "trials": self.trials,
            "seed": self.seed,
            "outer_uniform": self.outer_uniform,
            "inner_uniform": self.inner_uniform,
            "all_uniform": self.all_uniform,
            "rows": list(self.rows),
            "failures": self.failures,
        }


def _sweep_trial(args):
    n, d, tseed, tol, arc_segments = args
    F = random_general_hypersurface(n, d, tseed)
    rows = []
    for kind, sampler in (("outer", random_outer_point), ("inner", random_inner_point)):
        row = {"trial_seed": tseed, "center_kind": kind}
        try:
            P = sampler(F, tseed, tol)
            R = monodromy_report(F, P, seed=tseed, tol=tol, arc_segments=arc_segments)
            G = R.group
            row.update(
                uniform=R.uniform,
                order=str(G.order),
                group_degree=G.degree,
                labels=list(G.labels),
                transitive=is_transitive(G),
                branch_count=int(len(R.branch_points)),
                transpositions_only=all(g.cycle_type()[0] == 2 and sum(1 for c in g.cycle_type() if c > 1) == 1 for g in G.generators),
                retries=len(R.retries),
            )
        except ProjMonoError as exc:
            row.update(uniform=False, error=f"{type(exc).__name__}: {exc}")
        rows.append(row)
    return rows


def uniform_sweep(
    n: int, d: int, trials: int, seed: int = 0, tol=None, arc_segments: int = DEFAULT_ARC_SEGMENTS, n_jobs: int = 1
) -> SweepSummary:
    """Random hypersurfaces, one outer and one inner center each; trial ``i`` uses seed ``seed + i``."""
    for name, value in (("n", n), ("d", d), ("trials", trials)):
        lo, hi = SWEEP_BOUNDS[name]
        if not lo <= value <= hi:
            raise InputError(f"{name} = {value} outside the supported range [{lo}, {hi}]")
    tol = resolve(tol)
    jobs = [(n, d, int(seed) + i, tol, arc_segments) for i in range(trials)]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(_sweep_trial, jobs))
    else:
        results = [_sweep_trial(j) for j in jobs]
    rows = []
    for i, trial_rows in enumerate(results):
        for r in trial_rows:
            rows.append({"trial": i, **r})
    return SweepSummary(n, d, trials, int(seed), tuple(rows))


# ---------------------------------------------------------------------------
# degeneration
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DegenerationExperiment:
    d: int
    center: np.ndarray
    s_values: tuple[complex, ...]
    requested_s: tuple[complex, ...]
    base_group: PermGroup
    groups: tuple[PermGroup, ...]
    containment_results: tuple[bool, ...]
    label_matchings: tuple[tuple[int, ...], ...]
    matching_margins: tuple[float, ...]
    halvings: tuple[int, ...]
    basepoint: complex
    seed: int
    tolerances: Tolerances
    frame_seed: int = 0

    @property
    def contained(self) -> bool:
        return all(self.containment_results)

    def to_dict(self) -> dict:
        return {
            "tool": "projmono",
            "version": __version__,
            "seed": int(self.seed),
            "tolerances": self.tolerances.as_dict(),
            "d": self.d,
            "center": [_cplx(z) for z in self.center],
            "basepoint": _cplx(self.basepoint),
            "frame_seed": int(self.frame_seed),
            "base_group": _group_dict(self.base_group),
            "runs": [
                {
                    "requested_s": _cplx(rs),
                    "s": _cplx(s),
                    "halvings": h,
                    "group": _group_dict(G),
                    "contained": c,
                    "label_matching": list(m),
                    "matching_margin": float(mm),
                }
                for rs, s, h, G, c, m, mm in zip(
                    self.requested_s, self.s_values, self.halvings, self.groups,
                    self.containment_results, self.label_matchings, self.matching_margins,
                )
            ],
            "contained": self.contained,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def default_s_values(seed: int) -> tuple[complex, ...]:
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0xDE6])
    phases = np.exp(2j * np.pi * rng.random(2))
    return (complex(1e-2 * phases[0]), complex(1e-3 * phases[1]))


def _pencil_member(Y: HomogeneousPoly, H: HomogeneousPoly, F: HomogeneousPoly, s: complex) -> HomogeneousPoly:
    return Y * H + F * complex(s)


def _pilot_radius(fam: FiberFamily) -> float:
    pts = branch_points(fam, pilot=True).points
    return float(np.max(np.abs(pts))) if pts.size else 1.0


def degeneration_experiment(
    Y: HomogeneousPoly,
    H: HomogeneousPoly,
    F: HomogeneousPoly,
    P,
    s_values=None,
    seed: int = 0,
    tol=None,
    arc_segments: int = DEFAULT_ARC_SEGMENTS,
    max_halvings: int = 6,
    max_retries: int = MAX_RETRIES,
) -> DegenerationExperiment:
    """Check that the monodromy of ``Y`` embeds in that of ``X_s = {Y H + s F = 0}``.

    All families are sliced along one line and tracked from one basepoint.
    At the basepoint the ``d`` roots of ``X_s`` are matched to the ``d - 1``
    roots of ``Y`` plus the root of ``H`` (label ``d - 1``); a generator of
    the ``Y`` group, extended by fixing that label, must lie in the group of
    ``X_s``.  When the matching is not clear-cut, ``s`` is halved.
    """
    tol = resolve(tol)
    d = F.degree
    if Y.degree != d - 1 or H.degree != 1:
        raise InputError("need deg Y = deg F - 1 and H linear")
    if not Y.num_vars == H.num_vars == F.num_vars:
        raise InputError("Y, H and F must live in the same projective space")
    if d < 3:
        raise InputError("degeneration needs d >= 3")
    P = normalize_point(P)
    yv = abs(Y.unit_scaled().eval(P))
    hv = abs(H.unit_scaled().eval(P))
    if yv < tol.ambiguous and hv < tol.ambiguous:
        raise UnsupportedCenter("unsupported: center on singular locus of X0 (P lies on Y and H)")
    if yv < tol.ambiguous or hv < tol.ambiguous:
        raise UnsupportedCenter("unsupported: center lies on a component of X0")
    requested = tuple(complex(s) for s in (s_values if s_values is not None else default_s_values(seed)))
    if not requested or any(s == 0 for s in requested):
        raise InputError("s values must be nonzero")

    failures = []
    for attempt in range(max_retries):
        fseed = int(seed) + FRAME_SEED_STRIDE * attempt
        try:
            return _degeneration_attempt(Y, H, F, P, requested, seed, fseed, tol, arc_segments, max_halvings)
        except (DegenerateConfiguration, TrackingError, NonConvergence) as exc:
            failures.append(f"{type(exc).__name__}: {exc}")
    raise DegenerateConfiguration("degeneration experiment failed on every frame: " + " | ".join(failures))


def _degeneration_attempt(Y, H, F, P, requested, seed, fseed, tol, arc_segments, max_halvings):
    d = F.degree
    inst = build_projection(Y, P, seed=fseed, tol=tol)
    A, B = inst.origin, inst.direction
    fam_y = slice_with_frame(Y, P, A, B, inner=False, tol=tol)
    hA, hB, hP = H.eval(A), H.eval(B), H.eval(P)

    # s may be halved for each requested value; find final values first, then rescale together
    members = []
    for s in requested:
        members.append([s, _pencil_member(Y, H, F, s), 0])

    radius = _pilot_radius(fam_y)
    fams = []
    for m in members:
        fam = slice_with_frame(m[1], P, A, B, inner=False, tol=tol)
        radius = max(radius, _pilot_radius(fam))
        fams.append(fam)
    fam_y = fam_y.rescaled(radius)
    fams = [f.rescaled(radius) for f in fams]
    B = B * radius
    hB = hB * radius

    bps_y = branch_points(fam_y, tol)
    if not genericity_report(fam_y, bps_y, tol).generic:
        raise DegenerateConfiguration("Y slice is not generic")
    reach = float(np.max(np.abs(bps_y.points))) if len(bps_y) else 0.0
    all_bps = [bps_y]
    for fam in fams:
        b = branch_points(fam, tol)
        all_bps.append(b)
        reach = max(reach, float(np.max(np.abs(b.points))) if len(b) else 0.0)
    R = max(reach, 1.0) + 1.0
    s0 = complex(1.1 * R * np.exp(2j * np.pi * np.random.default_rng([fseed & 0xFFFFFFFF, 0x100B]).random()))

    plan_y = plan_loops(bps_y, seed=fseed, basepoint=s0, tol=tol)
    mg_y = monodromy_generators(fam_y, plan_y, arc_segments, tol=tol)
    M0 = PermGroup(d - 1, mg_y.petals)
    y_roots = mg_y.basepoint.roots
    t_h = -(hA + s0 * hB) / hP
    reference = np.concatenate([y_roots, [t_h]])
    ref_gap = float(np.min(np.abs(reference[:, None] - reference[None, :]) + np.diag(np.full(d, np.inf))))
    extended = [Permutation(list(g.images) + [d - 1]) for g in M0.generators]

    groups, results, matchings, margins, used_s, halvings = [], [], [], [], [], []
    for (s, _, _), fam in zip(members, fams):
        h = 0
        while True:
            try:
                base = initial_state(fam, s0, tol)
                perm = match_roots(base.roots, reference, tol.matching * ref_gap)
                break
            except AmbiguousMatching:
                if h >= max_halvings:
                    raise
                h += 1
                s = s / 2
                fam = slice_with_frame(_pencil_member(Y, H, F, s), P, A, B / radius, inner=False, tol=tol).rescaled(radius)
        b = branch_points(fam, tol)
        if not genericity_report(fam, b, tol).generic:
            raise DegenerateConfiguration(f"X_s slice is not generic at s = {s:.3g}")
        if max(float(np.max(np.abs(b.points))), 1.0) + 1.0 >= abs(s0):
            raise DegenerateConfiguration("branch points of X_s reach the basepoint circle")
        # root with label j at the basepoint is the one matched to reference j
        label_order = np.argsort(perm)
        plan = plan_loops(b, seed=fseed, basepoint=s0, tol=tol)
        mg = monodromy_generators(fam, plan, arc_segments, label_order=label_order, tol=tol)
        Ms = PermGroup(d, mg.petals)
        margin = float(np.max(np.abs(base.roots - reference[perm]))) / ref_gap
        groups.append(Ms)
        results.append(all(g in Ms for g in extended))
        matchings.append(tuple(int(x) for x in perm))
        margins.append(margin)
        used_s.append(complex(s))
        halvings.append(h)
    return DegenerationExperiment(
        d=d,
        center=P,
        s_values=tuple(used_s),
        requested_s=requested,
        base_group=M0,
        groups=tuple(groups),
        containment_results=tuple(results),
        label_matchings=tuple(matchings),
        matching_margins=tuple(margins),
        halvings=tuple(halvings),
        basepoint=s0,
        seed=int(seed),
        tolerances=tol,
        frame_seed=fseed,
    )


def random_degeneration_data(n: int, d: int, seed: int = 0):
    """``(Y, H, F, P)``: random ``Y`` of degree ``d - 1``, hyperplane, degree-``d`` form and outer center."""
    if d < 3:
        raise InputError("degeneration needs d >= 3")
    Y = random_general_hypersurface(n, d - 1, seed)
    F = random_general_hypersurface(n, d, seed + 1)
    rng = np.random.default_rng([int(seed) & 0xFFFFFFFF, 0x4A])
    H = HomogeneousPoly.linear(complex_gaussian(rng, n + 2))
    P = random_outer_point(Y * H, seed)
    return Y, H, F, P


# ---------------------------------------------------------------------------
# decomposability
# ---------------------------------------------------------------------------


def _towers(systems, degree):
    """Maximal refinement chains of block systems, as factor degrees from the top."""
    sets = [frozenset(frozenset(b) for b in s) for s in systems]
    size = [len(next(iter(s))) for s in sets]

    def refines(i, j):
        return size[i] < size[j] and all(any(b <= c for c in sets[j]) for b in sets[i])

    chains = []

    def extend(chain):
        last = chain[-1]
        nxt = [j for j in range(len(sets)) if refines(last, j)]
        if not nxt:
            chains.append(chain)
        for j in nxt:
            extend(chain + [j])

    starts = [i for i in range(len(sets)) if not any(refines(j, i) for j in range(len(sets)))]
    for i in starts:
        extend([i])
    towers = []
    for chain in chains:
        sizes = [1] + [size[i] for i in chain] + [degree]
        factors = [sizes[k + 1] // sizes[k] for k in range(len(sizes) - 1)]
        towers.append({"block_sizes": [size[i] for i in chain], "factor_degrees": factors})
    return towers


def decomposability_report(R) -> dict:
    """Block systems of the monodromy group read as candidate factorizations.

    A system with blocks of size ``b`` suggests ``X -> Y -> P^n`` with
    degrees ``b`` and ``degree / b``; chains of systems give longer towers.
    Accepts a :class:`MonodromyReport` or a :class:`PermGroup`.
    """
    G = R.group if isinstance(R, MonodromyReport) else R
    n = G.degree
    if not is_transitive(G):
        return {"degree": n, "transitive": False, "primitive": False, "decomposable": None, "systems": [], "towers": [],
                "statement": "group is not transitive; block analysis does not apply"}
    systems = block_systems(G) if n > 2 else []
    if not systems:
        return {"degree": n, "transitive": True, "primitive": True, "decomposable": False, "systems": [], "towers": [],
                "statement": "primitive: the projection admits no factorization"}
    out = []
    for s in systems:
        b = len(s[0])
        out.append({"block_size": b, "blocks": len(s), "partition": [list(x) for x in s],
                    "factorization": f"{n} = {n // b} x {b}"})
    towers = _towers(systems, n)
    text = "; ".join(" o ".join(f"{f}:1" for f in reversed(t["factor_degrees"])) for t in towers)
    return {"degree": n, "transitive": True, "primitive": False, "decomposable": True, "systems": out,
            "towers": towers, "statement": f"imprimitive: candidate towers {text}"}
