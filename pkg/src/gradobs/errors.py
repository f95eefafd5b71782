"""Exception hierarchy shared by all gradobs modules."""


class GradobsError(Exception):
    """Base class for all library errors."""


class DomainError(GradobsError, ValueError):
    """An argument lies outside the supported domain of an operation."""


class AccuracyError(GradobsError, ArithmeticError):
    """A numerical scheme failed to reach its target tolerance."""


class SizeError(GradobsError, ValueError):
    """A requested discretization exceeds a hard size cap."""


class ConvergenceError(GradobsError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class ConfigError(GradobsError, ValueError):
    """An experiment configuration failed validation."""
