"""Shared exception types."""


class LatcertError(Exception):
    pass


class SingularPivot(LatcertError):
    """A leading principal minor vanished during LDL^T factorization."""


class Degenerate(LatcertError):
    """Operation requires a nondegenerate lattice or form."""


class DegenerateInput(Degenerate):
    pass


class DegenerateForm(Degenerate):
    pass


class OddLattice(LatcertError):
    """Operation requires an even lattice."""


class ZeroVector(LatcertError):
    pass


class DependentSpan(LatcertError):
    pass


class TooLarge(LatcertError):
    """Brute-force cap exceeded."""


class ResourceCap(LatcertError):
    """Node or element budget exhausted before the search finished."""


class NotPositiveDefinite(LatcertError):
    pass


class NotNegativeDefinite(LatcertError):
    pass


class ComplementNotDefinite(LatcertError):
    pass


class NotStable(LatcertError):
    """A generator does not preserve the given sublattice."""


class NotIntegral(LatcertError):
    """Extension by identity does not land in the integral lattice."""


class NotCodeAutomorphism(LatcertError):
    pass


class UnknownName(LatcertError):
    pass


class NotFoundWithinBounds(LatcertError):
    """Bounded search exhausted without a witness; not a nonexistence proof."""
