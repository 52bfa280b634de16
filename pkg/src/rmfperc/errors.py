"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the domain an operation supports."""


class UnsupportedDistributionError(ParameterError):
    """The distribution lacks a property the operation requires
    (e.g. a density with connected bounded support)."""


class ResourceGuardError(RuntimeError):
    """A size guard was exceeded; results would be partial or unbounded."""


class NoBracketError(ValueError):
    """A survival curve is entirely sub- or supercritical, so no
    threshold bracket exists."""
