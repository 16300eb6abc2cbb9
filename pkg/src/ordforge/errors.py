"""Exception hierarchy. Every error carries its class name so the CLI can surface it."""


class OrdforgeError(Exception):
    """Base class for all library errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class ParseError(OrdforgeError, ValueError):
    pass


class AlphabetMismatch(OrdforgeError, ValueError):
    pass


class UnsupportedGroup(OrdforgeError):
    pass


class WindowExceeded(OrdforgeError):
    pass


class IdentityHasNoLeadingTerm(OrdforgeError, ValueError):
    pass


class BallBudgetExceeded(OrdforgeError):
    pass


class ReductionBudgetExceeded(OrdforgeError):
    pass


class MixedSignsAtLowestIndex(OrdforgeError):
    pass


class IncompatibleSpec(OrdforgeError):
    pass


class MagnusInconclusive(OrdforgeError):
    pass


class NotEventuallyShifting(OrdforgeError):
    pass


class MissingImage(OrdforgeError, KeyError):
    pass


class NoDiscretenessWitness(OrdforgeError):
    pass


class InvalidAction(OrdforgeError):
    pass
