"""Exception hierarchy shared across the package."""


class GaugesepError(Exception):
    """Base class for every error raised by this package."""


class InputError(GaugesepError):
    """Malformed or inconsistent caller input (dimension mismatch, failed precondition)."""


class DegenerateError(GaugesepError):
    """An operation hit a degenerate configuration (zero functional, dependent direction)."""


class EmptySetError(GaugesepError):
    """A set that must be nonempty is empty or has empty interior."""


class SolverError(GaugesepError):
    """A numerical solver failed; the message carries diagnostics."""


class SchemaError(GaugesepError):
    """A problem or result document violates the file schema."""
