"""Stationary states and their observables.

The direct backend solves the constrained null-vector problem of the
assembled superoperator; the relaxation backend integrates the
master equation from the fully mixed state until the right-hand side is
negligible. Observables: symmetry parameter, purity, entanglement
negativity, local expectations, fidelity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .errors import InvalidModelError, PtlindError
from .integrate import AdaptiveRK
from .liouvillian import apply_rhs, assemble
from .operators import LindbladModel
from .tolerances import DEFAULT, Tolerances


@dataclass
class SteadyStateResult:
    rho: np.ndarray
    residual: float  # ||L rho||_F in rate units
    solver: str  # "direct" | "relax"
    iterations: int


@dataclass
class ObservablesRecord:
    delta: float  # nan when both subsystems are dark (undefined)
    delta_defined: bool
    purity: float
    negativity: float
    zA: float  # <S^z> for spin kinds, occupation <n> for boson kinds
    zB: float
    occA: float  # <O_A^dag O_A>
    occB: float


def _hermitize(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def _normalize(rho: np.ndarray) -> np.ndarray:
    return rho / np.trace(rho).real


def solve_steady_state(
    model: LindbladModel,
    backend: str = "auto",
    tol: Tolerances = DEFAULT,
) -> SteadyStateResult:
    """Compute rho with L rho = 0 and trace 1."""
    if model.Gamma <= 0:
        raise InvalidModelError(
            "Gamma must be positive: at Gamma = 0 every diagonal ensemble of "
            "H eigenstates is stationary and the steady state is not unique"
        )
    if backend not in ("direct", "relax", "auto"):
        raise PtlindError(f"backend must be direct|relax|auto, got {backend!r}")
    if backend == "auto":
        backend = "direct" if model.n <= tol.dense_cap else "relax"

    if backend == "direct":
        L = assemble(model, "auto", tol)
        t = linalg.vec(np.eye(model.n, dtype=complex))
        x, _ = linalg.constrained_nullvector(L.to_dense(), t, tol)
        rho = _normalize(_hermitize(linalg.unvec(x, model.n)))
        residual = float(np.linalg.norm(apply_rhs(model, rho)))
        return SteadyStateResult(rho=rho, residual=residual, solver="direct", iterations=1)

    # relaxation from the fully mixed state
    n = model.n
    rho0 = np.eye(n, dtype=complex) / n
    threshold = tol.relax_rtol * model.Gamma
    stepper = AdaptiveRK(
        lambda r: apply_rhs(model, r), atol=tol.relax_atol, max_rhs_evals=tol.rhs_budget
    )
    scale = np.abs(model.H).max() + sum(np.abs(c).max() ** 2 for c in model.jumps)
    h0 = 0.01 / max(scale, 1e-6)
    _, rho = stepper.run(
        rho0,
        0.0,
        h0,
        stop=lambda r, f: float(np.linalg.norm(f)) <= threshold,
        post=_hermitize,
    )
    rho = _normalize(rho)
    residual = float(np.linalg.norm(apply_rhs(model, rho)))
    return SteadyStateResult(rho=rho, residual=residual, solver="relax", iterations=stepper.steps)


def positivity_repair(rho: np.ndarray, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Clip roundoff-negative eigenvalues; genuinely negative ones are an error."""
    w, v = linalg.hermitian_eig(_hermitize(rho), tol)
    if w.min() < -tol.positivity_clip:
        raise PtlindError(
            f"density matrix has a negative eigenvalue {w.min():.3e} beyond "
            f"the roundoff clip {-tol.positivity_clip:.1e}; solver failure"
        )
    w = np.clip(w, 0.0, None)
    w /= w.sum()
    return (v * w) @ v.conj().T


def local_expectation(rho: np.ndarray, d: int, op: np.ndarray) -> tuple[float, float]:
    """(<op (x) 1>, <1 (x) op>) for a d x d single-site operator."""
    eye = np.eye(d, dtype=complex)
    a = np.trace(linalg.kron(op, eye) @ rho).real
    b = np.trace(linalg.kron(eye, op) @ rho).real
    return float(a), float(b)


def negativity(rho: np.ndarray, d_a: int, d_b: int, tol: Tolerances = DEFAULT) -> float:
    """Sum of |negative eigenvalues| of the partial transpose."""
    pt = linalg.partial_transpose(_hermitize(rho), d_a, d_b)
    w, _ = linalg.hermitian_eig(pt, tol)
    return float(-w[w < 0].sum()) + 0.0


def fidelity_with_pure(rho: np.ndarray, psi: np.ndarray) -> float:
    """<psi| rho |psi> for a normalized pure target."""
    return float(np.real(psi.conj() @ rho @ psi))


def compute_observables(
    model: LindbladModel,
    rho: np.ndarray,
    tol: Tolerances = DEFAULT,
) -> ObservablesRecord:
    rho = positivity_repair(rho, tol)
    d = model.d
    if model.O is None:
        occ_a = occ_b = float("nan")
        delta, defined = float("nan"), False
    else:
        odo = model.O.conj().T @ model.O
        occ_a, occ_b = local_expectation(rho, d, odo)
        denom = occ_a + occ_b
        if abs(denom) < tol.delta_denominator:
            delta, defined = float("nan"), False
        else:
            delta, defined = abs(occ_a - occ_b) / denom, True
            delta = min(delta, 1.0)
    purity = float(np.trace(rho @ rho).real)
    neg = negativity(rho, d, d, tol)
    if model.ops is not None:
        z_a, z_b = local_expectation(rho, d, model.ops.z)
    else:
        z_a = z_b = float("nan")
    occ_a = max(occ_a, 0.0) if np.isfinite(occ_a) else occ_a
    occ_b = max(occ_b, 0.0) if np.isfinite(occ_b) else occ_b
    return ObservablesRecord(
        delta=delta,
        delta_defined=defined,
        purity=purity,
        negativity=neg,
        zA=z_a,
        zB=z_b,
        occA=occ_a,
        occB=occ_b,
    )


def dark_product_state(model: LindbladModel, tol: Tolerances = DEFAULT) -> np.ndarray:
    """|D><D| (x) |D*><D*| with O|D> = 0 and O^dag|D*> = 0.

    Exists for rank d-1 jump generators; the strong-dissipation steady state.
    """
    if model.O is None:
        raise InvalidModelError("model carries no jump generator O")
    odo = model.O.conj().T @ model.O
    w, v = linalg.hermitian_eig(odo, tol)
    ood = model.O @ model.O.conj().T
    w2, v2 = linalg.hermitian_eig(ood, tol)
    scale = max(np.abs(w).max(), np.abs(w2).max(), 1e-300)
    if w[0] > 1e-8 * scale or w2[0] > 1e-8 * scale:
        raise InvalidModelError("jump generator has no dark state")
    dark = v[:, 0]
    dark_star = v2[:, 0]
    psi = linalg.kron(dark.reshape(-1, 1), dark_star.reshape(-1, 1)).ravel()
    return np.outer(psi, psi.conj())
