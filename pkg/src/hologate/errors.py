"""Exception hierarchy for the hologate package.

Every error raised on purpose by this package derives from HologateError,
so callers can catch one type at the boundary.  Numerical backends may
still raise their own exceptions for conditions we do not pre-check;
those are wrapped where the wrapping adds information.
"""

from __future__ import annotations


class HologateError(Exception):
    """Base class for all package errors."""


class StructuralInputError(HologateError):
    """Input violates a structural precondition (shape, symmetry, norm)."""


class NumericalError(HologateError):
    """A numerical routine failed to converge or lost too much precision."""


class SamplingError(HologateError):
    """A sampled path is too coarse or malformed for the requested operation."""


class NotALoopError(HologateError):
    """Path endpoints do not close within tolerance.

    Carries the measured closure error in ``closure_error``.
    """

    def __init__(self, message: str, closure_error: float):
        super().__init__(message)
        self.closure_error = float(closure_error)


class SynthesisError(HologateError):
    """Controller synthesis failed verification.

    The offending report (with its measured errors) is attached as
    ``report`` so failures are never silent.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class AdiabaticityError(HologateError):
    """Traversal too fast: leakage out of the tracked band exceeded 0.5.

    Carries the measured ``leakage``.
    """

    def __init__(self, message: str, leakage: float):
        super().__init__(message)
        self.leakage = float(leakage)


class GateSpecError(StructuralInputError):
    """A gate-spec document failed to parse; message carries the position."""
