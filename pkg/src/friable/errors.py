"""Exception taxonomy shared by all modules.

The CLI maps these onto process exit codes: argument/precondition/numeric
failures exit 2, resource-budget failures exit 3, usage errors exit 64.
"""


class FriableError(Exception):
    """Base class for all library errors."""


class ArgumentError(FriableError):
    """An argument value is outside the operation's documented domain."""


class PreconditionError(FriableError):
    """A documented operation precondition does not hold for these inputs."""


class ResourceError(FriableError):
    """The request exceeds a configured memory or enumeration budget."""


class NumericError(FriableError):
    """A numeric procedure failed to bracket, converge, or meet its residual."""
