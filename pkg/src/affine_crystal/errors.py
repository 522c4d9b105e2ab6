"""Exception hierarchy shared by every module of the package."""


class AffineCrystalError(ValueError):
    """Base class for domain errors (bad input, violated preconditions)."""


class NotBijection(AffineCrystalError):
    pass


class BadResidue(AffineCrystalError):
    pass


class RankMismatch(AffineCrystalError):
    pass


class NotGrassmannian(AffineCrystalError):
    pass


class PartNotLessThanN(AffineCrystalError):
    pass


class IndexOutOfRange(AffineCrystalError):
    pass


class NotFinitePermutation(AffineCrystalError):
    pass


class NotGrassmannianPermutation(AffineCrystalError):
    pass


class ShapeTooBig(AffineCrystalError):
    pass


class XInContent(AffineCrystalError):
    """The chosen residue x occurs in a factor content."""


class XInvalid(AffineCrystalError):
    """The chosen residue x is not missing from the product."""


class NotTwoFactors(AffineCrystalError):
    pass


class NoMissingResidue(AffineCrystalError):
    """More than two factors requested for an element whose content is all of [n]."""


class UndecoratedGraph(AffineCrystalError):
    pass


class NotInSxHat(AffineCrystalError):
    pass


class MTooSmall(AffineCrystalError):
    pass


class DegreeMismatch(AffineCrystalError):
    pass


class HypothesisNotMet(AffineCrystalError):
    """The crystal method was requested but its hypotheses fail."""


class ShapeOutOfRange(AffineCrystalError):
    pass


class NotDivisible(AffineCrystalError):
    pass


class NotBounded(AffineCrystalError):
    pass


class DegreeLimitExceeded(AffineCrystalError):
    """A query would enumerate beyond the configured degree bound."""
