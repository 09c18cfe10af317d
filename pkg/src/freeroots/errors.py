"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user input: malformed graph file, bad weight, non-free weight, ..."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (rank deficiency, inconsistent solve, ...).

    These are never silently ignored: every basis construction and every
    recursion carries a verification step, and a failure there means a bug,
    not a bad input.
    """
