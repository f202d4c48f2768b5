"""Numerical tolerances, in one place so every report can embed them."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .exceptions import InputError


@dataclass(frozen=True)
class Tolerances:
    # polynomial layer
    zero_threshold: float = 1e-12
    root_residual: float = 1e-10
    # center classification (F unit-scaled, P max-norm normalized)
    inner: float = 1e-8
    ambiguous: float = 1e-6
    singular_center: float = 1e-7
    frame_degeneracy: float = 1e-3
    deflation: float = 1e-9
    # branch points, relative to the largest branch point modulus (floored at 1)
    branch_cluster: float = 1e-3
    # tracking, relative to the fiber scale (largest root modulus, floored at 1)
    collision: float = 1e-6
    newton: float = 1e-11
    step_floor: float = 2.0 ** -20
    # degeneration experiment: matched distance / reference root separation
    matching: float = 0.25

    def replace(self, **overrides) -> "Tolerances":
        known = {f.name for f in dataclasses.fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise InputError(f"unknown tolerance name(s): {', '.join(unknown)}")
        return dataclasses.replace(self, **{k: float(v) for k, v in overrides.items()})

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def resolve(tol) -> Tolerances:
    if tol is None:
        return DEFAULT_TOLERANCES
    if isinstance(tol, Tolerances):
        return tol
    return DEFAULT_TOLERANCES.replace(**dict(tol))
