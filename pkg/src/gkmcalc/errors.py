"""Error types shared across the package.

Two families matter for the CLI exit codes: ``ValidationError`` covers bad
input data (exit 2), ``ContractError`` covers arithmetic results that violate
an operation's guarantee and therefore certify a bug or a non-class input
(exit 3).
"""

from __future__ import annotations


class ValidationError(ValueError):
    pass


class ContractError(ArithmeticError):
    pass


class NotDelzant(ValidationError):
    """Some vertex's primitive edge directions are not a lattice basis."""


class NotAPolytopeSkeleton(ValidationError):
    """Detected or supplied edges do not give every vertex degree n."""


class SuppliedXiNotGeneric(ValidationError):
    """A user-supplied direction vector pairs to zero with an edge weight
    or fails to separate the vertices."""


class GKMViolation(ValidationError):
    """A restriction table fails the edge divisibility condition."""

    def __init__(self, edge, difference):
        super().__init__(f"divisibility fails on edge {edge.src}->{edge.dst}")
        self.edge = edge
        self.difference = difference


class NonPolynomialIndex(ContractError):
    """A localized sum that must reduce to a polynomial did not."""


class DivisionFailure(ContractError):
    """Triangular elimination hit a value not divisible by the Euler class."""


class VerificationFailure(ContractError):
    """A constructed basis element failed its own index conditions."""


class NotECanEdge(ValidationError):
    """Edge passed to the projection-quotient computation has index jump != 1."""


class NonConstantQuotient(ContractError):
    """The projected Euler class ratio did not reduce to a constant."""


class IntegralityFailure(ContractError):
    """A path-sum class came out non-polynomial or with fractional entries."""


class NotIndexIncreasing(ValidationError):
    """Operation requires an index increasing orientation."""


class NonUniqueMaximum(ValidationError):
    """The chosen circle direction does not single out a top vertex."""


class NotFreeAction(ValidationError):
    """Reduced point weights are fractional: the circle action is not free."""
