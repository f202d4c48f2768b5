"""Monodromy of linear projections of complex projective hypersurfaces."""

__version__ = "0.1.0"

from .config import DEFAULT_TOLERANCES, Tolerances  # noqa: E402
from .exceptions import *  # noqa: E402,F401,F403
from .polycore import HomogeneousPoly, parse_poly  # noqa: E402
from .permgroup import Permutation, PermGroup  # noqa: E402
from .classifier import (  # noqa: E402
    MonodromyReport,
    decomposability_report,
    degeneration_experiment,
    monodromy_report,
    random_general_hypersurface,
    uniform_sweep,
)

__all__ = [
    "__version__",
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "HomogeneousPoly",
    "parse_poly",
    "Permutation",
    "PermGroup",
    "MonodromyReport",
    "monodromy_report",
    "random_general_hypersurface",
    "uniform_sweep",
    "degeneration_experiment",
    "decomposability_report",
]
