"""Exception types shared by every module and mapped to CLI exit codes."""


class DomainError(ValueError):
    """An input violates a mathematical precondition (odd length, non-Markov triple, ...)."""


class ResourceLimitError(RuntimeError):
    """A configured depth or node budget would be exceeded."""


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagreed."""
