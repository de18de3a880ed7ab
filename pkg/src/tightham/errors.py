"""Exception hierarchy.

Every failure a stage can report is a subclass of :class:`TightHamError`, so
callers can catch broadly and still inspect ``diagnostics`` for detail.
"""
from __future__ import annotations

from typing import Any


class TightHamError(Exception):
    """Base class; ``diagnostics`` carries structured context for reports."""

    def __init__(self, message: str = "", **diagnostics: Any) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics


# core hypergraph
class HypergraphError(TightHamError, ValueError):
    pass


class OutOfRange(HypergraphError):
    pass


class DegenerateTriple(HypergraphError):
    pass


class DegeneratePair(HypergraphError):
    pass


# shave
class PreconditionFailed(TightHamError):
    pass


class BoundViolation(TightHamError):
    pass


# absorb / connect / pathcover
class NotFound(TightHamError):
    pass


class NoPath(TightHamError):
    pass


class BadEnds(TightHamError):
    pass


class PipelineError(TightHamError):
    """A stage of the Hamilton pipeline failed; ``stage`` names it."""

    stage = "pipeline"


class CoverTooSparse(PipelineError):
    stage = "cover"

    def __init__(self, message: str = "", best=None, **diagnostics: Any) -> None:
        super().__init__(message, **diagnostics)
        self.best = best


# oracle
class TooLarge(TightHamError):
    pass


# pipeline
class ReservoirFailed(PipelineError):
    stage = "reservoir"


class SlotInvalid(TightHamError):
    pass


class ShaveFailed(PipelineError):
    stage = "shave"


class AbsorberFailed(PipelineError, NotFound):
    stage = "absorber"


class ConnectFailed(PipelineError, NoPath):
    stage = "connect"


class VerificationFailed(PipelineError):
    """Raised if an assembled cycle fails verification. Always a bug."""

    stage = "verify"


# io
class FormatError(TightHamError, ValueError):
    pass


class BadParams(TightHamError, ValueError):
    pass
