"""
Exceptions raised by the sparsifier library.

Management commands map these onto exit codes: usage problems -> 2,
resource limits -> 3. Verification failures are never raised; they are
reported (exit code 1).
"""


class SparsifierError(Exception):
    """Base class for all library errors."""


class GraphFormatError(SparsifierError):
    """Edge-list or motif file that does not parse."""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class InvalidGraphError(SparsifierError):
    """Graph, motif or cut that violates its invariants."""


class MotifSpecError(SparsifierError):
    """Unknown preset name or malformed inline motif."""


class LimitExceededError(SparsifierError):
    """A configured resource limit would be exceeded."""

    def __init__(self, what, value, limit, hint=None):
        self.what = what
        self.value = value
        self.limit = limit
        message = f"{what}: {value} exceeds limit {limit}"
        if hint:
            message = f"{message} ({hint})"
        super().__init__(message)


class ContractViolation(SparsifierError):
    """A bound that is asserted at runtime did not hold."""


class ConfigError(SparsifierError):
    """Sparsification constants or command parameters out of range."""
