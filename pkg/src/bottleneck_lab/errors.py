"""Exception types shared across the package."""

from __future__ import annotations


class BottleneckLabError(Exception):
    """Base class for every error this package raises on purpose."""


class SelfLoopError(BottleneckLabError, ValueError):
    """An analysis operation was handed a graph with a self-loop.

    Loops are storable (parsers keep them, serialization round-trips them)
    but none of the path or separation machinery is defined for them, so
    each analysis entry point rejects them up front instead of producing
    quietly wrong numbers.
    """


class GraphFormatError(BottleneckLabError, ValueError):
    """Unparseable graph input.  Carries the offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(BottleneckLabError):
    """A search hit its work budget before finishing.

    ``lower_bound`` is the best value certified so far.  It is a genuine
    lower bound: a witness for it was found and checked.  ``upper_bound``
    is a coarse structural cap (for the bottleneck scans, the edge count)
    that holds regardless of the pairs the scan never reached; None means
    no sound cap is available.
    """

    def __init__(
        self,
        message: str,
        lower_bound: int = 0,
        pairs_examined: int = 0,
        upper_bound: int | None = None,
    ):
        self.lower_bound = lower_bound
        self.pairs_examined = pairs_examined
        self.upper_bound = upper_bound
        super().__init__(message)


class OracleUnavailableError(BottleneckLabError):
    """A brute-force oracle refused to run (input too large for it)."""


class CmtPreconditionError(BottleneckLabError, ValueError):
    """A precondition of the constructive ladder routine failed.

    ``code`` is a short machine-readable tag naming which one:
    'b-too-small', 'centers-too-close', 'poles-too-close',
    'separation-failed', 'centers-overlap-poles', 'wrong-center-count',
    'b-ball-system-found'.
    """

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")
