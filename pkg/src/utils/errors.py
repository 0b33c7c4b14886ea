"""
Exception hierarchy for weylfree
Every failure raised by the library derives from WeylfreeError
"""

from typing import Any, Optional


class WeylfreeError(Exception):
    """Base class for all library errors"""


class UnsupportedLabelError(WeylfreeError, ValueError):
    """Series/rank combination or embedding name outside the supported table"""


class DimensionMismatchError(WeylfreeError, ValueError):
    """Weights living in different realizations"""


class NonDominantWeightError(WeylfreeError, ValueError):
    """Weight is not dominant integral where one is required"""


class BoundExceededError(WeylfreeError):
    """A dimension, degree or rank bound was exceeded"""

    def __init__(self, message: str, bound: Any = None, requested: Any = None):
        super().__init__(message)
        self.bound = bound
        self.requested = requested


class InternalInconsistencyError(WeylfreeError):
    """An invariant that can only fail through a bug was violated"""


class VerificationFailedError(WeylfreeError):
    """A mathematical verification did not hold

    The optional witness is a serializable object showing the failure.
    """

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class NonIntegralQuotientError(VerificationFailedError):
    """Dividing a graded dimension series by the Heisenberg series failed"""


class UnresolvedRootLabelError(WeylfreeError, KeyError):
    """Shorthand root label with no entry in the label table"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unresolved root label"


class CriticalLevelError(WeylfreeError, ZeroDivisionError):
    """Level equals minus the dual Coxeter number"""


class UsageError(WeylfreeError):
    """Invalid command-line invocation"""
