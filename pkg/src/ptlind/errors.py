"""Exception types shared across the library."""


class PtlindError(Exception):
    """Base class for all library errors."""


class NonHermitianError(PtlindError):
    """Input violated a Hermiticity precondition. Carries the defect."""

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"matrix is not Hermitian: max|M - M^dag| = {residual:.3e} "
            f"exceeds tolerance {tolerance:.3e}"
        )


class EigenConvergenceError(PtlindError):
    """Eigensolver hit its iteration cap. Carries any converged eigenvalues."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class DegenerateNullspaceError(PtlindError):
    """The null space has more than one direction (degenerate steady-state manifold)."""


class InvalidModelError(PtlindError):
    """Model construction or validation failed."""


class UnstableRegimeError(PtlindError):
    """Analytic limit requested outside its stability region (Gamma <= g)."""


class DenseCapExceededError(PtlindError):
    """Dense representation refused; use the sparse/matrix-free path."""


class IntegrationError(PtlindError):
    """Adaptive integrator exhausted its step budget or underflowed."""
