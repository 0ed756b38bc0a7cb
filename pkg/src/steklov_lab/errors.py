"""Exception hierarchy shared by every module.

Two families: configuration/geometry problems that a caller can fix
(:class:`ValidationError`, CLI exit code 1) and numerical failures inside a
solver (:class:`SolverError`, CLI exit code 2).
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Invalid configuration, geometry, or argument combination."""

    exit_code = 1


class SolverError(RuntimeError):
    """A numerical routine failed to produce a trustworthy result."""

    exit_code = 2


class CriticalRadiusTooLarge(ValidationError):
    """Hole radius beta*eps^(d-1) reached half the cell size."""


class NonAlignedLattice(ValidationError):
    """Domain side lengths are not integer multiples of the period."""


class DegenerateAnnulus(ValidationError):
    """Inner radius is not strictly between 0 and the outer radius."""


class DegenerateCell(ValidationError):
    """Hole does not fit strictly inside the unit periodicity cell."""


class EmptyBoundarySelection(ValidationError):
    """Requested boundary tags select no edges on this mesh."""


class OutOfValidatedRange(ValidationError):
    """Argument outside the range where the routine is accuracy-checked."""


class OutOfRegime(ValidationError):
    """Parameter combination outside the regime where the formula holds."""


class TagMismatch(ValidationError):
    """Problem kind requires boundary structure the mesh does not have."""


class InsufficientData(ValidationError):
    """Too few points for the requested fit or statistic."""


class DimensionMismatch(ValidationError):
    """Array shapes or sizes are inconsistent."""


class InvalidEigenvector(ValidationError):
    """Candidate eigenvector is zero or has no mass in the pencil."""


class IncompatibleLoad(SolverError):
    """Load vector violates the compatibility condition of a singular system."""


class ConvergenceFailure(SolverError):
    """Iterative eigenvalue or linear solver did not converge."""


class RootBracketingFailure(SolverError):
    """Root finder could not bracket a sign change where one was expected."""
