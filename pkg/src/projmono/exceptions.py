"""Exception hierarchy shared by the numerical and group-theoretic layers."""


class ProjMonoError(Exception):
    """Base class for every error raised by projmono."""


class InputError(ProjMonoError, ValueError):
    """Malformed or out-of-range user input."""


class ParseError(InputError):
    """Text input could not be parsed; carries a 1-based line/column."""

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class NonConvergence(ProjMonoError):
    """An iterative solver hit its iteration cap without meeting its residual test."""


class DegenerateConfiguration(ProjMonoError):
    """The sampled slice/frame is not generic enough to produce a verdict."""


class NonReducedFamily(DegenerateConfiguration):
    """The discriminant of a fiber family vanishes identically."""


class DeflationError(ProjMonoError):
    """The center root could not be removed within tolerance."""


class UnsupportedCenter(ProjMonoError):
    """Center point outside the supported cases (singular point, ambiguous, on Y ∩ H)."""


class TrackingError(ProjMonoError):
    """Path tracking failed: step floor reached, corrector divergence, or ambiguous matching."""


class AmbiguousMatching(TrackingError):
    """Two fibers could not be matched bijectively within tolerance."""


class PreconditionError(ProjMonoError):
    """A group-theoretic lemma was invoked outside its hypotheses."""
