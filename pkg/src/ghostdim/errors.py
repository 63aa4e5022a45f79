"""Exception hierarchy.  Each class maps to a CLI exit code."""


class GhostdimError(Exception):
    exit_code = 1


class InputError(GhostdimError, ValueError):
    """Malformed or invalid input (parse errors, bad parameters)."""

    exit_code = 1


class InconclusiveError(GhostdimError):
    """A growth estimate could not be settled on the given window."""

    exit_code = 2


class RefusedError(GhostdimError):
    """A hypothesis required by the requested bound is not met."""

    exit_code = 3


class ResourceLimitError(GhostdimError):
    exit_code = 4


class InvariantViolation(GhostdimError, AssertionError):
    """An internal consistency check failed; this indicates a defect."""

    exit_code = 5
