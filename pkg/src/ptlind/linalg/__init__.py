"""Complex dense/sparse linear-algebra kernels used by every other module.

Conventions fixed here for the whole repository:

* vectorization is column-stacking, ``vec(A rho B) = (B^T kron A) vec(rho)``;
* the Hermitian eigensolver is a cyclic Jacobi iteration, the general
  eigensolver is Hessenberg reduction plus implicitly shifted QR -- both exist
  twice, as a compiled extension (``ptlind.linalg._kernels``) and as a
  pure-numpy twin (``_kernels_py``), selected at import. Set
  ``PTLIND_KERNELS=py`` or ``=cy`` to force one.

The constrained null-vector solve and the Kronecker/CSR plumbing are backed by
LAPACK/scipy; the eigensolver kernels and the seeded Gaussian sampler are
self-contained.
"""

from __future__ import annotations

import os

import numpy as np
import scipy.sparse as sparse
from scipy.linalg import get_lapack_funcs

from ..errors import (
    DegenerateNullspaceError,
    EigenConvergenceError,
    NonHermitianError,
    PtlindError,
)
from ..tolerances import DEFAULT, Tolerances
from . import _kernels_py

_FORCED = os.environ.get("PTLIND_KERNELS", "auto").lower()
if _FORCED not in ("auto", "cy", "py"):
    raise PtlindError(f"PTLIND_KERNELS must be auto|cy|py, got {_FORCED!r}")

if _FORCED == "py":
    _kernels = _kernels_py
    KERNEL_BACKEND = "py"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]

        KERNEL_BACKEND = "cy"
    except ImportError:
        if _FORCED == "cy":
            raise
        _kernels = _kernels_py
        KERNEL_BACKEND = "py"

__all__ = [
    "KERNEL_BACKEND",
    "SeededSampler",
    "constrained_nullvector",
    "general_eig",
    "hermitian_eig",
    "kron",
    "partial_transpose",
    "sample_gaussian",
    "to_csr",
    "unvec",
    "vec",
]


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho).reshape(-1, order="F")


def unvec(x: np.ndarray, n: int | None = None) -> np.ndarray:
    if n is None:
        n = int(round(np.sqrt(x.size)))
    return np.asarray(x).reshape((n, n), order="F")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of dense matrices."""
    return np.kron(a, b)


def to_csr(a) -> sparse.csr_matrix:
    """CSR representation; round-trips losslessly via ``.toarray()``."""
    return sparse.csr_matrix(a, dtype=np.complex128)


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.abs(m - m.conj().T).max())


def hermitian_eig(m: np.ndarray, tol: Tolerances = DEFAULT):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with real eigenvalues ascending and unitary columns
    such that ``m @ v = v @ diag(w)``. Rejects non-Hermitian input with the
    measured defect.
    """
    m = np.asarray(m, dtype=np.complex128)
    scale = float(np.abs(m).max()) if m.size else 0.0
    defect = hermiticity_defect(m)
    if defect > tol.herm_input_rel * max(scale, 1e-300):
        raise NonHermitianError(defect, tol.herm_input_rel * scale)
    if scale == 0.0:
        n = m.shape[0]
        return np.zeros(n), np.eye(n, dtype=np.complex128)
    w, v = _kernels.jacobi_eigh(m, tol.eig_off_rel * scale)
    return w, v


def general_eig(m: np.ndarray, tol: Tolerances = DEFAULT) -> np.ndarray:
    """All complex eigenvalues of a square matrix, sorted by real part."""
    m = np.asarray(m, dtype=np.complex128)
    if m.shape[0] != m.shape[1]:
        raise PtlindError(f"general_eig needs a square matrix, got {m.shape}")
    w = _kernels.hessenberg_qr_eigvals(m, tol.qr_iter_factor * m.shape[0])
    return w[np.argsort(w.real, kind="stable")]


def constrained_nullvector(
    L,
    t: np.ndarray,
    tol: Tolerances = DEFAULT,
):
    """Minimize ``||L x||`` subject to ``t . x = 1``.

    Solves the augmented least-squares system ``[L; t^T] x = [0; 1]`` with a
    QR factorization. Returns ``(x, residual)`` where ``residual = ||L x||``.
    A second small diagonal entry of R flags a null space with more than one
    direction and raises :class:`DegenerateNullspaceError`.
    """
    if sparse.issparse(L):
        L = L.toarray()
    L = np.asarray(L, dtype=np.complex128)
    t = np.asarray(t, dtype=np.complex128)
    n = L.shape[1]
    if t.size != n or not np.any(t):
        raise PtlindError("constraint vector must be nonzero and match L's columns")
    a = np.empty((L.shape[0] + 1, n), dtype=np.complex128, order="F")
    a[:-1] = L
    a[-1] = t
    b = np.zeros((a.shape[0], 1), dtype=np.complex128)
    b[-1, 0] = 1.0
    geqrf, unmqr, trtrs = get_lapack_funcs(("geqrf", "unmqr", "trtrs"), (a,))
    qr, tau, work, info = geqrf(a, lwork=-1, overwrite_a=True)
    qr, tau, work, info = geqrf(a, lwork=int(work[0].real), overwrite_a=True)
    if info != 0:
        raise PtlindError(f"QR factorization failed (info={info})")
    rdiag = np.abs(np.diag(qr)[:n])
    if rdiag.min() <= tol.nullspace_rank_rel * max(rdiag.max(), 1e-300):
        raise DegenerateNullspaceError(
            "null space appears to have more than one direction "
            f"(min|R_ii| = {rdiag.min():.2e}, max = {rdiag.max():.2e})"
        )
    cq, work, info = unmqr("L", "C", qr, tau, b, lwork=-1)
    cq, work, info = unmqr("L", "C", qr, tau, b, lwork=int(work[0].real))
    if info != 0:
        raise PtlindError(f"applying Q^H failed (info={info})")
    x, info = trtrs(qr[:n, :n], cq[:n])
    if info != 0:
        raise PtlindError(f"triangular solve failed (info={info})")
    x = x[:, 0]
    residual = float(np.linalg.norm(L @ x))
    return x, residual


def partial_transpose(rho: np.ndarray, d_a: int, d_b: int) -> np.ndarray:
    """Partial transpose on subsystem A of a bipartite ``(d_a*d_b)``-dim state."""
    rho = np.asarray(rho)
    if rho.shape != (d_a * d_b, d_a * d_b):
        raise PtlindError(
            f"partial_transpose: shape {rho.shape} incompatible with {d_a}x{d_b}"
        )
    r = rho.reshape(d_a, d_b, d_a, d_b)
    return r.transpose(2, 1, 0, 3).reshape(d_a * d_b, d_a * d_b)


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


class SeededSampler:
    """Deterministic stream of standard-normal variates.

    Counter-based splitmix64 feeding a cartesian Box-Muller transform: the
    i-th pair of uniforms comes from mixing ``seed + i * golden_ratio``, so the
    stream is reproducible for a given seed and independent of block sizes.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.counter = 0

    def _uniforms(self, m: int) -> np.ndarray:
        idx = np.arange(self.counter + 1, self.counter + m + 1, dtype=np.uint64)
        self.counter += m
        z = (np.uint64(self.seed) + idx * _GOLDEN).astype(np.uint64)
        z ^= z >> np.uint64(30)
        z *= _MIX1
        z ^= z >> np.uint64(27)
        z *= _MIX2
        z ^= z >> np.uint64(31)
        # top 53 bits, shifted into (0, 1]
        return ((z >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53

    def normal(self, n: int) -> np.ndarray:
        pairs = (n + 1) // 2
        u = self._uniforms(2 * pairs)
        r = np.sqrt(-2.0 * np.log(u[0::2]))
        theta = 2.0 * np.pi * u[1::2]
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:n]


def sample_gaussian(s: SeededSampler, n: int) -> np.ndarray:
    """``n`` standard-normal samples from the given sampler."""
    return s.normal(n)
