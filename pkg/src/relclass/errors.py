"""Exception hierarchy; the CLI maps each class to an exit code."""


class RelclassError(Exception):
    exit_code = 1


class InvalidInput(RelclassError, ValueError):
    exit_code = 2


class ResourceLimit(RelclassError):
    exit_code = 3


class PrecisionError(ResourceLimit):
    """Requested accuracy is not reachable at the configured working precision."""


class InconsistencyError(RelclassError):
    """Two independent computations disagree beyond their error budgets."""

    exit_code = 4
