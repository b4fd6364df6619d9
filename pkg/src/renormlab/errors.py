"""Exception hierarchy shared by all modules."""


class RenormLabError(Exception):
    """Base class for every error raised by the package."""


class NumericFailure(RenormLabError):
    """A numerical routine could not meet its tolerance or budget."""


class NoConvergence(NumericFailure):
    pass


class NewtonDivergence(NumericFailure):
    pass


class NoBracket(NumericFailure):
    pass


class SolverFailure(NumericFailure):
    pass


class OutOfFamily(RenormLabError):
    pass


# shuffle combinatorics

class InvalidShuffle(RenormLabError):
    """Base for permutation validation failures; ``witness`` names the culprit."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotABijection(InvalidShuffle):
    pass


class NotACycle(InvalidShuffle):
    pass


class NotUnimodal(InvalidShuffle):
    pass


class Renormalizable(InvalidShuffle):
    """Raised with ``q`` = block size of the block-wise permuted partition."""

    def __init__(self, message, q):
        super().__init__(message, witness=q)
        self.q = q


class NotSuperattracting(RenormLabError):
    pass


class OrbitCollision(RenormLabError):
    pass


# principal nest

class ImmediatelyRenormalizable(RenormLabError):
    pass


class LevelBudgetExceeded(RenormLabError):
    pass


class AdmissibilityViolation(RenormLabError):
    pass


class NotNeglectable(RenormLabError):
    pass


class NotInsertable(RenormLabError):
    pass


# renormalization

class NotRenormalizable(RenormLabError):
    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class PrecisionExhausted(NumericFailure):
    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class ItineraryUndefined(RenormLabError):
    pass


class LandingBudgetExceeded(RenormLabError):
    pass


# parabolic numerics

class NotParabolic(RenormLabError):
    pass


class DegenerateParabolic(NotParabolic):
    """Multiplier is 1 but the quadratic Taylor coefficient vanishes."""


class SlowConvergence(NumericFailure):
    pass


class NotInBasin(RenormLabError):
    pass


class GateClosed(RenormLabError):
    pass


class TransitBudgetExceeded(NumericFailure):
    pass


class OutsideDomain(RenormLabError):
    pass


class LandingFailure(RenormLabError):
    pass
