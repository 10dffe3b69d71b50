"""Exception types shared across the package."""


class SemiboundError(Exception):
    pass


class DimensionMismatch(SemiboundError, ValueError):
    pass


class CapExceeded(SemiboundError):
    """Closure grew past the element cap (infinite or too-large semigroup)."""

    def __init__(self, cap, report=None):
        super().__init__(f"closure exceeded cap of {cap} elements")
        self.cap = cap
        self.report = report


class NotClosed(SemiboundError, ValueError):
    pass


class NotIdempotent(SemiboundError, ValueError):
    pass


class NoZero(SemiboundError, ValueError):
    pass


class TrivialSemigroup(SemiboundError, ValueError):
    pass


class NotHomomorphism(SemiboundError, ValueError):
    pass


class NotGGM(SemiboundError, ValueError):
    pass


class NotSameJClass(SemiboundError, ValueError):
    pass


class NotInvertible(SemiboundError, ValueError):
    pass


class ZeroVector(SemiboundError, ValueError):
    pass


class DependentBasis(SemiboundError, ValueError):
    pass


class NotIrreducible(SemiboundError):
    """Input semigroup has a proper nonzero invariant subspace."""

    def __init__(self, verdict, report=None):
        super().__init__("semigroup is reducible")
        self.verdict = verdict
        self.report = report


class Inconclusive(SemiboundError):
    def __init__(self, verdict, report=None):
        super().__init__("irreducibility could not be decided")
        self.verdict = verdict
        self.report = report


class InternalContradiction(SemiboundError):
    """A check that the theory guarantees has failed; always a bug."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
