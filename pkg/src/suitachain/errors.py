"""Exception types shared across the library."""


class SuitachainError(Exception):
    """Base class for all library errors."""


class PointOutsideDomain(SuitachainError):
    """A point that must lie strictly inside the domain does not."""


class PoleOutsideDomain(SuitachainError):
    """Requested Green's function pole is not strictly inside the domain."""


class PoleEvaluation(SuitachainError):
    """Green's function evaluated at its own pole."""


class RadiusTooLarge(SuitachainError):
    """Circle-mean radius reaches or exceeds the pole's boundary distance."""


class SolveFailed(SuitachainError):
    """Collocation system was ill-conditioned or the boundary defect stayed
    above tolerance; raising the node count usually helps."""


class ContourNotFound(SuitachainError):
    """No closed level curve could be extracted at the requested level."""


class InvalidCount(SuitachainError):
    """Sampling count too small for the domain's boundary components."""


class ResolutionTooLow(SuitachainError):
    """Quadrature resolution leaves too few interior nodes."""


class BasisDegenerate(SuitachainError):
    """Orthonormalization defect above tolerance; degree too high for the
    quadrature resolution."""


class NoClosedForm(SuitachainError):
    """No closed-form expression is implemented for the requested input."""


class ChainViolation(SuitachainError):
    """An inequality link failed beyond combined tolerance.  The mathematics
    guarantees the ordering, so this always signals a solver fault."""

    def __init__(self, link: str, magnitude: float):
        self.link = link
        self.magnitude = magnitude
        super().__init__(f"chain ordering violated at link {link} by {magnitude:.3e}")


class DomainSpecError(SuitachainError):
    """Domain-spec JSON is malformed or violates a domain invariant."""
