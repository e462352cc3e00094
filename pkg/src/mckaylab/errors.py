"""Shared exception types."""


class ExactnessError(ArithmeticError):
    """An exact-arithmetic postcondition failed (inexact division, surviving
    irrational part, parity violation).  Always indicates a bug in a table or
    counting pipeline, never bad user input."""


class CacheError(RuntimeError):
    """A cache artifact is corrupt, incomplete or written by an incompatible
    version.  Callers recover by rebuilding; distinct from math failures."""
