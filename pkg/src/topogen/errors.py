"""Exception hierarchy.

InvalidInput subclasses map to CLI exit code 2 (the request itself is
malformed or describes an impossible object); UnsupportedCase subclasses map
to exit code 3 (the request is well formed but outside the implemented
scope).
"""


class TopogenError(Exception):
    """Base class for all library errors."""


class InvalidInput(TopogenError):
    """The input is malformed or violates a structural invariant."""


class UnsupportedCase(TopogenError):
    """Well-formed input outside the implemented rule set."""


# --- validation errors (exit 2) ---

class DimensionMismatch(InvalidInput):
    pass


class ParityViolation(InvalidInput):
    pass


class CentralClass(InvalidInput):
    pass


class OrderViolation(InvalidInput):
    pass


class SizeMismatch(InvalidInput):
    pass


class MixedKinds(InvalidInput):
    pass


class NotApplicable(InvalidInput):
    pass


class SchemaError(InvalidInput):
    pass


# --- unsupported-case errors (exit 3) ---

class UnsupportedGroup(UnsupportedCase):
    pass


class UnsupportedChar2Class(UnsupportedCase):
    pass


class MissingSpin8Profile(UnsupportedCase):
    pass


class OutsideCatalog(UnsupportedCase):
    pass


class BadCharacteristic(UnsupportedCase):
    pass


class NoSuchClass(UnsupportedCase):
    pass


class BoundExceeded(UnsupportedCase):
    pass


class Infeasible(UnsupportedCase):
    pass


class Uninstantiable(UnsupportedCase):
    pass


class NonSplit(UnsupportedCase):
    pass


class GroupTooLarge(UnsupportedCase):
    pass


class EnumerationTooLarge(UnsupportedCase):
    pass
