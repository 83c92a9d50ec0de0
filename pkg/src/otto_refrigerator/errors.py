"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegimeError(ValueError):
    """An approximation was requested outside its range of validity."""


class ConvergenceError(RuntimeError):
    """A series did not converge within its hard term caps."""


class PhysicsError(RuntimeError):
    """A simulation step produced an unphysical state."""


class ConfigError(ValueError):
    """A configuration document violates the schema.

    ``path`` is the dotted key path of the offending entry.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
