r"""
Shared exception types.

The split between :class:`StructureError` and :class:`InvalidTrackError`
matters: the former means the input is not even a well-formed combinatorial
object (indices out of range, bad slot names) and is raised at construction
time; the latter means a well-formed object fails a semantic invariant
(region census, connectivity, ...) and carries the validation report.
"""


class TracksurfError(Exception):
    """Base class for all library-specific errors."""


class StructureError(TracksurfError, ValueError):
    """Malformed input: out-of-range indices, bad slot names, wrong shapes."""


class InvalidTrackError(TracksurfError, ValueError):
    """A structurally well-formed track failed validation.

    ``report`` holds the list of violated-invariant messages.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = list(report) if report is not None else []


class EmptyConeError(TracksurfError, ValueError):
    """The transverse cone of a non-recurrent track has no extreme rays."""


class NotSplittableError(TracksurfError, ValueError):
    """Split requested at a branch that is not large."""


class NonGenericMeasureError(TracksurfError, ValueError):
    """A measure failed to determine a split direction (tie case).

    ``branch`` is the large branch at which the tie occurred; ``step`` is the
    index within a driven sequence, when applicable.
    """

    def __init__(self, message, branch=None, step=None):
        super().__init__(message)
        self.branch = branch
        self.step = step


class InternalInconsistencyError(TracksurfError, RuntimeError):
    """An internal cross-check failed (signals a bug, not bad input)."""


class MeasureMismatchError(TracksurfError, ValueError):
    """Weights paired across different tracks or with wrong kinds."""


class ParseError(TracksurfError, ValueError):
    """A file-format error; ``line`` is the 1-based offending line number."""

    def __init__(self, line, message):
        super().__init__("line %d: %s" % (line, message))
        self.line = line
