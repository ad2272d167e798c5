"""Exception hierarchy. Every error raised by the library derives from
:class:`ByzFusionError` so the CLI can map them to a nonzero exit status."""


class ByzFusionError(Exception):
    pass


class ValidationError(ByzFusionError, ValueError):
    """A type invariant was violated at construction time."""


class DomainError(ByzFusionError, ValueError):
    """Inputs are valid values but outside the domain of the operation."""


class OrderingError(DomainError):
    """Closed-form optimizer called with pi11 <= pi10."""


class NearDegenerateError(DomainError):
    """Marginals too close together for a formula that divides by their gap."""


class DegenerateModelError(DomainError):
    pass


class NumericError(ByzFusionError, ArithmeticError):
    pass


class SizeError(ByzFusionError, ValueError):
    pass


class ConsistencyError(ByzFusionError, ValueError):
    pass


class ConfigError(ByzFusionError, ValueError):
    pass
