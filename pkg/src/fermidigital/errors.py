"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class CapacityError(ValueError):
    """A dense realization was requested beyond the supported size."""


class ParameterError(ValueError):
    """A numerical or structural parameter is out of its valid range."""


class ValidationError(ValueError):
    """An operator failed a required property check (e.g. Hermiticity)."""


class SiteIndexError(IndexError):
    """A site or qubit label lies outside ``1..N`` or violates an ordering."""


class SupportError(ValueError, IndexError):
    """A gate or compilation request has an invalid qubit support.

    Also an :class:`IndexError`, since the usual cause is a qubit label
    outside the register.
    """


class CompilationError(ValueError):
    """A term cannot be lowered onto the requested native gate set."""


class UnschedulableError(ValueError):
    """A gate cannot be placed on any resonator of the architecture."""

    def __init__(self, message: str, qubits: tuple[int, ...] = ()):
        super().__init__(message)
        self.qubits = qubits


class ConfigError(ValueError):
    """An experiment configuration file is malformed."""
