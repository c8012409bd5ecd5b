"""Error types shared across the package.

Both inherit from ValueError so callers that do not care about the
distinction can catch a single class.  The CLI maps DomainError to
exit code 1 and CapacityError to exit code 1 as well, reserving 2
for argument parsing problems.
"""


class DomainError(ValueError):
    """Input violates a documented precondition (bad value, not bad size)."""


class CapacityError(ValueError):
    """Input is valid but would exceed a configured resource bound."""
