"""Exception hierarchy shared by every module of the package."""


class RelsheafError(Exception):
    """Base class for all errors raised by relsheaf."""


class InvalidAlgebra(RelsheafError, ValueError):
    """Raised when a structure fails to be a finite Heyting algebra.

    ``witness`` holds the elements exhibiting the failure (names, not indices).
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotAPoset(InvalidAlgebra):
    pass


class NotALattice(InvalidAlgebra):
    pass


class NoBounds(InvalidAlgebra):
    pass


class NotHeyting(InvalidAlgebra):
    pass


class UnknownElement(RelsheafError, KeyError):
    pass


class CarrierMismatch(RelsheafError, ValueError):
    pass


class ModeError(RelsheafError, ValueError):
    pass


class NotACover(RelsheafError, ValueError):
    pass


class OrderError(RelsheafError, ValueError):
    pass


class NaturalityViolation(RelsheafError, ValueError):
    pass


class NotASheaf(RelsheafError, ValueError):
    pass


class InvalidPresheaf(RelsheafError, ValueError):
    pass


class LawViolation(RelsheafError, ValueError):
    """A constructed morphism failed the law it is supposed to satisfy."""


class ParseError(RelsheafError, ValueError):
    def __init__(self, line, reason, path=None):
        where = f"{path}:{line}" if path else f"line {line}"
        super().__init__(f"{where}: {reason}")
        self.line = line
        self.reason = reason
        self.path = path


class BoundsError(RelsheafError, ValueError):
    pass


class UnknownSuite(RelsheafError, KeyError):
    pass
