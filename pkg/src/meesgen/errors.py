"""Exception hierarchy shared across the package.

All domain-level failures derive from DomainError so the CLI can map them
to a single exit code.
"""


class DomainError(Exception):
    """Base class for invalid physical inputs or unsolvable requests."""


class EmptySpectrum(DomainError):
    """A spectrum needs at least two levels."""


class DegenerateGround(DomainError):
    """Local ground state must be nondegenerate (A_1 > A_0 and B_1 > B_0)."""


class OutOfRange(DomainError):
    """Requested entanglement outside the solvable open interval."""


class NonMonotone(DomainError):
    """Entropy does not vary with beta (fully degenerate diagonal energies)."""


class ZeroVector(DomainError):
    """Target vector has (numerically) zero norm."""


class NotUnitary(DomainError):
    """Matrix failed the unitarity check."""


class NotHermitian(DomainError):
    """Matrix failed the hermiticity check."""


class ZeroLambda0(DomainError):
    """Closed form undefined for targets with no ground-ket component."""


class ZeroEntanglementTarget(DomainError):
    """Efficiency is 0/0 for the trivial target (already the ground state)."""


class InvalidLeak(DomainError):
    """Leak parameter must lie strictly inside (0, 1)."""


class MeasureMismatch(DomainError):
    """Sampling measure incompatible with the requested approach."""


class UnknownFixture(DomainError):
    """Unrecognized two-qubit fixture name."""
