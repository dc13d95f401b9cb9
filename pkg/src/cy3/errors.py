class DomainError(ValueError):
    """Input is well-formed but mathematically outside the operation's domain."""


class UsageError(ValueError):
    """Parameters the operation does not accept (wrong sizes, unsupported p, ...)."""
