class InvalidCurveError(ValueError):
    """Singular model, or a modulus outside the supported range."""


class NotOnCurveError(ValueError):
    pass


class InconsistentOrderError(ArithmeticError):
    """The supplied group order does not annihilate the point."""


class BadReductionError(ValueError):
    pass


class HypothesisViolation(ValueError):
    """An input breaks a standing hypothesis (e.g. a torsion point where infinite order is assumed)."""


class ResourceError(RuntimeError):
    """Enumeration would exceed its configured budget."""


class InsufficientCoefficientsError(ValueError):
    pass
