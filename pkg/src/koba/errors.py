"""Exception hierarchy shared by every koba module."""


class KobaError(Exception):
    """Base class for all errors raised by koba."""


class InvalidRegion(KobaError, ValueError):
    """Region data is malformed, unbounded, or has empty interior."""


class NotInterior(KobaError, ValueError):
    """A point lies outside (or within 1e-12 of the boundary of) an open region."""


class EmptyErosion(KobaError, ValueError):
    """Erosion radius is at least the inradius."""


class InfeasibleLevelSet(KobaError, ValueError):
    """The superlevel set {delta >= r} is empty."""


class SolverDiverged(KobaError, RuntimeError):
    """An iterative solver hit its iteration cap above tolerance."""


class DegenerateGeometry(KobaError, ArithmeticError):
    """Inputs to a bound formula are inconsistent with a valid inscribed-disk solution."""


class DomainError(KobaError, ValueError):
    """A scalar formula was evaluated outside its domain."""


class BranchViolation(KobaError, ValueError):
    """A fractional power was requested off the right half-plane."""


class ZeroDirection(KobaError, ValueError):
    """A tangent direction of norm zero was supplied."""


class DegenerateFit(KobaError, ValueError):
    """Least-squares exponent fit has too few or collinear abscissae."""


class SpecError(KobaError, ValueError):
    """A domain specification document could not be parsed."""
