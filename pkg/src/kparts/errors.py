"""Exception types shared across the package."""


class KpartsError(Exception):
    """Base class for all package-specific errors."""


class Irrational(KpartsError):
    """A root-of-unity expression expected to be rational has nonzero
    coefficients on positive-degree basis monomials."""


class OutOfTable(KpartsError, LookupError):
    """A lookup exceeded the bounds of a precomputed table."""


class TooLarge(KpartsError):
    """Input exceeds a guard bound that keeps brute-force enumeration feasible."""


class NonIntegerResult(KpartsError):
    """An exact formula that must produce an integer did not; signals an
    implementation or convention fault, never bad user input."""


class SingularSystem(KpartsError):
    """Exact elimination found a rank-deficient linear system."""


class ConventionUnresolved(KpartsError):
    """No catalogued formula convention reproduces the reference values."""


class WindowTooSmall(KpartsError):
    """The sequence window is too short to certify a period."""


class DomainError(KpartsError, ValueError):
    """Arguments violate a documented precondition."""
