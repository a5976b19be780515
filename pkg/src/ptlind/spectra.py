"""Full Liouvillian spectra and time evolution of observables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .errors import DenseCapExceededError, PtlindError
from .integrate import AdaptiveRK
from .liouvillian import apply_rhs, assemble
from .operators import LindbladModel
from .steadystate import local_expectation, solve_steady_state
from .tolerances import DEFAULT, Tolerances


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray  # sorted by real part
    gap: float  # -max nonzero real part
    norm: float  # ||L||_F used for the zero threshold


@dataclass
class Trajectory:
    times: np.ndarray
    zA: np.ndarray
    zB: np.ndarray
    trace_error: np.ndarray
    hermiticity_error: np.ndarray
    extra: dict = field(default_factory=dict)


def _symmetrize_conjugate_pairs(w: np.ndarray) -> np.ndarray:
    """Restore exact conjugation symmetry of an eigenvalue multiset.

    The master-equation generator is a real linear map on the space of
    Hermitian matrices, so its spectrum is closed under conjugation exactly;
    the vectorized representation loses that to roundoff. Eigenvalues are
    greedily paired with their nearest conjugate partner and averaged
    (self-paired ones become real), which preserves the multiset size and
    the sum.
    """
    w = np.array(w, dtype=complex)
    used = np.zeros(len(w), dtype=bool)
    out = []
    for i in np.argsort(-np.abs(w.imag), kind="stable"):
        if used[i]:
            continue
        used[i] = True
        target = np.conj(w[i])
        free = np.flatnonzero(~used)
        self_dist = 2.0 * abs(w[i].imag)
        if len(free) == 0:
            out.append(complex(w[i].real))
            continue
        j = free[int(np.argmin(np.abs(w[free] - target)))]
        if self_dist <= abs(w[j] - target):
            out.append(complex(w[i].real))
            continue
        used[j] = True
        mu = 0.5 * (w[i] + np.conj(w[j]))
        out.extend([mu, np.conj(mu)])
    return np.array(out, dtype=complex)


def liouvillian_spectrum(model: LindbladModel, tol: Tolerances = DEFAULT) -> SpectrumResult:
    """All n^2 eigenvalues of the dense superoperator, sorted by real part."""
    if model.n > tol.spectrum_cap:
        raise DenseCapExceededError(
            f"full spectrum needs a dense {model.n ** 2}^2 eigenproblem; cap is "
            f"{tol.spectrum_cap}^2"
        )
    L = assemble(model, "auto", tol)
    dense = L.to_dense()
    norm = float(np.linalg.norm(dense, "fro"))
    w = _symmetrize_conjugate_pairs(linalg.general_eig(dense, tol))
    w = w[np.argsort(w.real, kind="stable")]
    nonzero = w[np.abs(w) > tol.physics * norm]
    gap = float(-nonzero.real.max()) if len(nonzero) else 0.0
    return SpectrumResult(eigenvalues=w, gap=gap, norm=norm)


def polarized_product_state(model: LindbladModel, m_a: str, m_b: str) -> np.ndarray:
    """|m_a><m_a| (x) |m_b><m_b| with labels "top"/"bottom" of the local basis."""
    d = model.d
    ia = 0 if m_a == "top" else d - 1
    ib = 0 if m_b == "top" else d - 1
    psi = np.zeros(d * d, dtype=complex)
    psi[ia * d + ib] = 1.0
    return np.outer(psi, psi.conj())


def evolve(
    model: LindbladModel,
    rho0: np.ndarray,
    t_max: float,
    dt_out: float = 0.05,
    tol: Tolerances = DEFAULT,
) -> Trajectory:
    """Integrate the master equation, sampling observables every ``dt_out``.

    The trace is NOT renormalized; its drift is reported as a diagnostic.
    """
    if model.ops is None:
        raise PtlindError("evolve needs a model with local subsystem operators")
    rho0 = np.asarray(rho0, dtype=complex)
    n_samples = int(np.floor(t_max / dt_out + 1e-9)) + 1
    times = np.arange(n_samples) * dt_out
    z_op = model.ops.z

    rec: dict[str, list] = {"t": [], "zA": [], "zB": [], "tr": [], "herm": [], "pur": []}

    def sample(t: float, rho: np.ndarray):
        za, zb = local_expectation(rho, model.d, z_op)
        rec["t"].append(t)
        rec["zA"].append(za)
        rec["zB"].append(zb)
        rec["tr"].append(abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag))
        rec["herm"].append(float(np.abs(rho - rho.conj().T).max()))
        rec["pur"].append(float(np.trace(rho @ rho).real))

    scale = np.abs(model.H).max() + sum(np.abs(c).max() ** 2 for c in model.jumps)
    stepper = AdaptiveRK(
        lambda r: apply_rhs(model, r), atol=tol.relax_atol, max_rhs_evals=tol.rhs_budget
    )
    _, rho_final = stepper.run(
        rho0,
        0.0,
        0.01 / max(scale, 1e-6),
        t_end=float(t_max),
        sample_times=times,
        on_sample=sample,
    )
    return Trajectory(
        times=np.array(rec["t"]),
        zA=np.array(rec["zA"]),
        zB=np.array(rec["zB"]),
        trace_error=np.array(rec["tr"]),
        hermiticity_error=np.array(rec["herm"]),
        extra={"purity": np.array(rec["pur"]), "rho_final": rho_final},
    )


def classify_dynamics(
    traj: Trajectory,
    model: Optional[LindbladModel] = None,
    z_inf: Optional[float] = None,
    tol: Tolerances = DEFAULT,
) -> str:
    """"oscillatory" when zA - zA(inf) changes sign at least twice, else "overdamped".

    The stationary offset comes from the direct solver when feasible,
    otherwise from the trajectory tail average. Samples within the noise
    floor of the extremal deviation are ignored when counting sign changes.
    """
    if len(traj.times) < 10:
        raise PtlindError("trajectory too short to classify (need >= 10 samples)")
    if z_inf is None:
        if model is not None and model.n <= tol.dense_cap:
            rho0 = solve_steady_state(model, "direct", tol).rho
            z_inf, _ = local_expectation(rho0, model.d, model.ops.z)
        else:
            z_inf = float(traj.zA[-max(3, len(traj.zA) // 10):].mean())
    dev = traj.zA - z_inf
    floor = 1e-6 * np.abs(dev).max()
    signs = np.sign(dev[np.abs(dev) > floor])
    changes = int(np.count_nonzero(np.diff(signs) != 0))
    return "oscillatory" if changes >= 2 else "overdamped"
