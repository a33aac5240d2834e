"""Exception hierarchy shared by all modules.

Every failure mode maps to a process exit code in the CLI:
parse errors -> 2, precondition violations -> 3, uncertifiable
enclosures -> 4, internal inconsistencies -> 5.
"""


class MomCensusError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ParseError(MomCensusError):
    """Malformed input text.  Carries line/column when known."""

    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column is not None else "") + f": {message}"
        super().__init__(message)


class PreconditionError(MomCensusError):
    """An operation was called outside its stated domain."""

    exit_code = 3


class IntervalDomainError(PreconditionError):
    """Interval operation outside its mathematical domain (log of a
    non-positive interval, division by an interval containing zero, ...)."""


class DegenerateShapeError(PreconditionError):
    """Tetrahedron shape whose imaginary part cannot be certified positive."""


class DegeneratePairError(PreconditionError):
    """Two finite horoballs with coincident (uncertifiably distinct) centers."""


class UncertifiableError(MomCensusError):
    """The enclosure is too wide to decide the question either way.

    Never resolved silently: callers must refine their input.
    """

    exit_code = 4


class AmbiguousSpectrumError(UncertifiableError):
    """Two orthodistance enclosures overlap but no declared label or
    symmetry certifies them equal."""


class InternalInconsistencyError(MomCensusError):
    """Two independent computations of the same quantity produced
    disjoint enclosures.  Signals a numerics bug, not bad input."""

    exit_code = 5


class StructuralError(MomCensusError):
    """Combinatorially malformed gluing or triangulation data."""

    exit_code = 2
