"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: wrong dimensions, bad file syntax, invalid graph."""


class SizeLimit(RuntimeError):
    """An enumeration would exceed its configured cap."""


class EmptyPolytope(ValueError):
    pass


class UnboundedInput(ValueError):
    pass


class NotInterior(ValueError):
    pass


class NotFullDim(ValueError):
    pass


class AffineHullViolation(ValueError):
    pass


class UnboundedLift(ValueError):
    pass


class EmptyInput(ValueError):
    pass


class MalformedInput(InputError):
    pass


class NegativeSlack(ValueError):
    pass
