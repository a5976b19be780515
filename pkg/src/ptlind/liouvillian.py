"""Vectorized Liouvillian assembly, PT-symmetry check and stationarity diagnostics.

With column-stacking vectorization the generator reads

    L = -i (I (x) H - H^T (x) I)
        + sum_k [ conj(c_k) (x) c_k - 1/2 I (x) (c_k^dag c_k)
                  - 1/2 (c_k^dag c_k)^T (x) I ].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.sparse as sparse

from . import linalg
from .errors import DenseCapExceededError, InvalidModelError
from .operators import LindbladModel, PTMapSpec, pt_map
from .tolerances import DEFAULT, Tolerances


@dataclass
class Superoperator:
    """The vectorized Liouvillian acting on column-stacked density matrices."""

    n: int  # Hilbert dimension (d^2 for the bipartite models)
    data: Union[np.ndarray, sparse.spmatrix]
    fmt: str  # "dense" | "sparse"

    def to_dense(self) -> np.ndarray:
        return self.data.toarray() if self.fmt == "sparse" else self.data

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.data @ x

    def norm_fro(self) -> float:
        if self.fmt == "sparse":
            return float(sparse.linalg.norm(self.data, "fro"))
        return float(np.linalg.norm(self.data, "fro"))


@dataclass
class PTCheckReport:
    residual: float
    norm: float
    symmetric: bool


@dataclass
class MixednessObstruction:
    value: float  # max degenerate-pair matrix element, in units of Gamma
    degeneracy_tolerance: float


def _dense_terms(H: np.ndarray, jumps: list[np.ndarray]) -> np.ndarray:
    n = H.shape[0]
    eye = np.eye(n, dtype=complex)
    L = -1j * (linalg.kron(eye, H) - linalg.kron(H.T, eye))
    for c in jumps:
        cdc = c.conj().T @ c
        L += linalg.kron(c.conj(), c)
        L -= 0.5 * linalg.kron(eye, cdc)
        L -= 0.5 * linalg.kron(cdc.T, eye)
    return L


def _sparse_terms(H: np.ndarray, jumps: list[np.ndarray]) -> sparse.csr_matrix:
    n = H.shape[0]
    eye = sparse.identity(n, dtype=complex, format="csr")
    Hs = linalg.to_csr(H)
    L = -1j * (sparse.kron(eye, Hs) - sparse.kron(Hs.T, eye))
    for c in jumps:
        cs = linalg.to_csr(c)
        cdc = (cs.conj().T @ cs).tocsr()
        L = L + sparse.kron(cs.conj(), cs)
        L = L - 0.5 * sparse.kron(eye, cdc)
        L = L - 0.5 * sparse.kron(cdc.T, eye)
    return L.tocsr()


def assemble(model: LindbladModel, fmt: str = "auto", tol: Tolerances = DEFAULT) -> Superoperator:
    """Build the superoperator. ``fmt`` is ``dense``, ``sparse`` or ``auto``.

    ``auto`` picks sparse construction (cheap for the structured models) and
    densifies, falling back to direct dense assembly when the jump operators
    are dense anyway. Dense output is refused above the configured cap.
    """
    n = model.n
    if fmt not in ("dense", "sparse", "auto"):
        raise InvalidModelError(f"format must be dense|sparse|auto, got {fmt!r}")
    if fmt == "sparse":
        return Superoperator(n=n, data=_sparse_terms(model.H, model.jumps), fmt="sparse")
    if n > tol.dense_cap:
        raise DenseCapExceededError(
            f"dense superoperator of dimension {n * n} exceeds the cap "
            f"({tol.dense_cap}^2); use the sparse or matrix-free path"
        )
    if fmt == "dense":
        return Superoperator(n=n, data=_dense_terms(model.H, model.jumps), fmt="dense")
    # auto: route through sparse kron when the operators are sparse enough
    nnz_frac = max(np.count_nonzero(np.abs(c) > 0) / c.size for c in model.jumps) if model.jumps else 0.0
    if nnz_frac <= 0.25:
        return Superoperator(n=n, data=_sparse_terms(model.H, model.jumps).toarray(), fmt="dense")
    return Superoperator(n=n, data=_dense_terms(model.H, model.jumps), fmt="dense")


def apply_rhs(model: LindbladModel, rho: np.ndarray) -> np.ndarray:
    """Matrix-free evaluation of the master-equation right-hand side."""
    H = model.H
    out = -1j * (H @ rho - rho @ H)
    for c, cdc in zip(model.jumps, model.jump_products()):
        out += c @ rho @ c.conj().T
        out -= 0.5 * (cdc @ rho + rho @ cdc)
    return out


def pt_symmetry_check(
    model: LindbladModel,
    spec: Optional[PTMapSpec] = None,
    tol: Tolerances = DEFAULT,
) -> PTCheckReport:
    """Compare L[H; c_k] against L[PT(H); PT(c_k)] in Frobenius norm.

    The comparison is done at the Liouvillian level since the PT map may
    permute the jump labels.
    """
    spec = spec or model.pt_spec
    mapped_h = pt_map(model.H, spec)
    mapped_jumps = [pt_map(c, spec) for c in model.jumps]
    nnz_frac = (
        max(np.count_nonzero(np.abs(c) > 0) / c.size for c in model.jumps)
        if model.jumps
        else 0.0
    )
    if nnz_frac > 0.25 and model.n <= tol.dense_cap:
        L = _dense_terms(model.H, model.jumps)
        Lm = _dense_terms(mapped_h, mapped_jumps)
        norm = float(np.linalg.norm(L, "fro"))
        residual = float(np.linalg.norm(L - Lm, "fro"))
    else:
        L = _sparse_terms(model.H, model.jumps)
        Lm = _sparse_terms(mapped_h, mapped_jumps)
        norm = float(sparse.linalg.norm(L, "fro"))
        residual = float(sparse.linalg.norm(L - Lm, "fro"))
    return PTCheckReport(residual=residual, norm=norm, symmetric=residual <= tol.pt_check_rel * norm)


def effective_parity(spec: PTMapSpec) -> np.ndarray:
    """The unitary whose eigenvalues grade the energy eigenstates (P or P U)."""
    if spec.extra_unitary is None:
        return spec.parity
    return spec.parity @ spec.extra_unitary


def _refined_energy_basis(model: LindbladModel, spec: PTMapSpec, tol: Tolerances):
    """Simultaneous eigenbasis of H and the effective parity.

    Returns (energies, V, zeta) where parity is diagonalized inside each
    degenerate energy block and zeta are its unit-modulus eigenvalues.
    """
    P = effective_parity(spec)
    H = model.H
    comm = np.abs(P @ H - H @ P).max()
    if comm > 1e-10 * max(np.abs(H).max(), 1e-300):
        raise InvalidModelError(
            f"effective parity does not commute with H (||[H,P]||_max = {comm:.2e})"
        )
    w, v = linalg.hermitian_eig(H, tol)
    escale = max(np.abs(w).max(), 1e-300)
    deg_tol = tol.degeneracy_rel * escale

    p2 = P @ P
    eye = np.eye(P.shape[0])
    if np.abs(p2 - eye).max() <= 1e-8:
        sign = 1.0
    elif np.abs(p2 + eye).max() <= 1e-8:
        sign = -1.0  # (PU)^2 = -1 for half-integer spins
    else:
        raise InvalidModelError("effective parity is not an involution up to sign")

    zeta = np.empty(len(w), dtype=complex)
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and w[j] - w[j - 1] <= deg_tol:
            j += 1
        block = v[:, i:j]
        pb = block.conj().T @ P @ block
        herm = pb if sign > 0 else 1j * pb
        herm = 0.5 * (herm + herm.conj().T)
        mu, x = linalg.hermitian_eig(herm, tol)
        v[:, i:j] = block @ x
        zeta[i:j] = mu if sign > 0 else -1j * mu
        i = j
    return w, v, zeta


def mixedness_obstruction(
    model: LindbladModel,
    spec: Optional[PTMapSpec] = None,
    tol: Tolerances = DEFAULT,
) -> MixednessObstruction:
    """Max degenerate-pair element of sum_k [c_k, c_k^dag] weighted by parity mismatch.

    Zero predicts that the fully mixed state is stationary to first order in
    the dissipation rate; a finite value signals coherence build-up between
    degenerate levels of different parity.
    """
    spec = spec or model.pt_spec
    w, v, zeta = _refined_energy_basis(model, spec, tol)
    escale = max(np.abs(w).max(), 1e-300)
    deg_tol = tol.degeneracy_rel * escale

    m = np.zeros_like(model.H)
    for c in model.jumps:
        m += c @ c.conj().T - c.conj().T @ c
    t = v.conj().T @ m @ v

    value = 0.0
    n = len(w)
    for i in range(n):
        for j in range(n):
            if abs(w[i] - w[j]) <= deg_tol:
                value = max(value, abs(t[i, j] * (1.0 - np.conj(zeta[i]) * zeta[j])))
    if model.Gamma > 0:
        value /= model.Gamma
    return MixednessObstruction(value=float(value), degeneracy_tolerance=float(deg_tol))


def fully_mixed_population_rate(
    model: LindbladModel,
    spec: Optional[PTMapSpec] = None,
    tol: Tolerances = DEFAULT,
) -> float:
    """Max energy-basis population derivative of the fully mixed state, per Gamma.

    The diagonal is taken in the parity-refined eigenbasis of H; it vanishes
    for PT-symmetric models (first-order stationarity of the fully mixed
    state).
    """
    spec = spec or model.pt_spec
    _, v, _ = _refined_energy_basis(model, spec, tol)
    n = model.n
    rhodot = apply_rhs(model, np.eye(n, dtype=complex) / n)
    diag = np.einsum("ij,jk,ki->i", v.conj().T, rhodot, v)
    rate = float(np.abs(diag).max())
    return rate / model.Gamma if model.Gamma > 0 else rate
