"""Exception taxonomy.

``AtlasError`` subclasses are user-facing analysis errors: bad or
out-of-scope input.  The CLI reports them as structured error documents
with exit code 2.  ``InvariantViolation`` is different: it means a checked
structural theorem failed on supposedly valid input, which is a bug report,
not a user error (exit code 1).
"""

from __future__ import annotations


class AtlasError(Exception):
    code = "AtlasError"


class ParseError(AtlasError):
    code = "ParseError"


class EmptySupport(AtlasError):
    code = "EmptySupport"


class EmptySubset(AtlasError):
    code = "EmptySubset"


class FullSubset(AtlasError):
    code = "FullSubset"


class ArityMismatch(AtlasError):
    code = "ArityMismatch"


class NonzeroDefect(AtlasError):
    code = "NonzeroDefect"


class NonnegativeDefect(AtlasError):
    code = "NonnegativeDefect"


class TooLarge(AtlasError):
    code = "TooLarge"


class NotBK(AtlasError):
    code = "NotBK"


class NotLinearlyDependent(AtlasError):
    code = "NotLinearlyDependent"


class NotUniqueCircuit(AtlasError):
    code = "NotUniqueCircuit"


class NotEssentialDependent(AtlasError):
    code = "NotEssentialDependent"


class UnderdeterminedError(AtlasError):
    code = "Underdetermined"


class RankTooHigh(AtlasError):
    code = "RankTooHigh"


class InvariantViolation(Exception):
    """A proved structural property failed; carries diagnostic payload."""

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload
