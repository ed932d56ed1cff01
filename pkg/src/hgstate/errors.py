"""Exception types shared across the library."""


class HgstateError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(HgstateError, ValueError):
    """Parameter set violates an admissibility constraint."""


class DomainError(HgstateError, ValueError):
    """Input outside the mathematical domain of a special function."""


class RangeError(HgstateError, ValueError):
    """Index or argument outside its allowed range."""


class TruncationError(HgstateError, ArithmeticError):
    """Fock-space truncation discards too much probability mass."""


class ConvergenceError(HgstateError, ArithmeticError):
    """An iterative series or expansion failed to meet its tolerance."""


class DegenerateSpectrum(HgstateError, ArithmeticError):
    """Two eigenvalues coincide where distinctness is required."""
