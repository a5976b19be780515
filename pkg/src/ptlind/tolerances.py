"""Central tolerance record.

All numerical thresholds used across the library live here so that a single
record can be threaded through solvers and overridden from the command line
(``--tol key=value``).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # linear algebra
    lin: float = 1e-10                 # generic linear-algebra residuals
    herm_tag: float = 1e-12            # Hermitian-tagged matrix defect, relative
    herm_input_rel: float = 1e-10      # Hermiticity required of eigensolver input
    eig_off_rel: float = 1e-13         # Jacobi off-diagonal convergence target
    trace_sum_rel: float = 1e-8        # eigenvalue-sum vs trace consistency
    nullspace_rank_rel: float = 1e-11  # R-diagonal threshold flagging degeneracy
    # physics
    physics: float = 1e-8              # physics-level residuals
    pt_check_rel: float = 1e-10        # PT-symmetry residual, relative to ||L||_F
    degeneracy_rel: float = 1e-8       # energy gap below which levels count as degenerate
    positivity_clip: float = 1e-8      # eigenvalues in [-clip, 0) are treated as roundoff
    delta_denominator: float = 1e-14   # guard for the symmetry-parameter denominator
    # solver controls
    dense_cap: int = 120               # max Hilbert dimension for dense superoperators
    spectrum_cap: int = 26             # max Hilbert dimension for full eigenspectra
    relax_rtol: float = 1e-8           # relaxation stops at ||rho_dot||_F <= relax_rtol * Gamma
    relax_atol: float = 1e-10          # per-entry step error tolerance of the integrator
    rhs_budget: int = 10_000_000       # max right-hand-side evaluations per relaxation
    qr_iter_factor: int = 100          # general eigensolver cap: qr_iter_factor * n steps

    def replaced(self, **kwargs) -> "Tolerances":
        """Return a copy with the given fields overridden."""
        return dataclasses.replace(self, **kwargs)


DEFAULT = Tolerances()
