"""Pure-python (numpy-vectorized) eigensolver kernels.

These mirror the compiled kernels in ``_kernels.pyx`` and are selected at
import time when the extension is missing or disabled. Both implement the
same algorithms:

* ``jacobi_eigh`` -- cyclic Jacobi with complex rotations for Hermitian
  matrices; quadratically convergent, unitary accumulation of eigenvectors.
* ``hessenberg_qr_eigvals`` -- Householder reduction to upper Hessenberg form
  followed by an implicit single-shift QR iteration with Wilkinson shifts,
  occasional exceptional shifts and aggressive deflation. Eigenvalues only.
"""

from __future__ import annotations

import numpy as np

from ..errors import EigenConvergenceError

_EPS = float(np.finfo(np.float64).eps)


def _jacobi_rotation(app: float, aqq: float, apq: complex):
    """Rotation (c, s, w) eliminating the (p, q) element of a Hermitian 2x2.

    The unitary acting on the (p, q) plane is ``[[c, -s*w], [s*conj(w), c]]``
    with real c, s and unimodular w = apq/|apq|.
    """
    absb = abs(apq)
    w = apq / absb
    tau = (aqq - app) / (2.0 * absb)
    if tau >= 0.0:
        t = -1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = 1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    return c, t * c, w


def jacobi_eigh(a: np.ndarray, off_tol: float, max_sweeps: int = 60):
    """Eigendecomposition of a Hermitian matrix by the cyclic Jacobi method.

    Returns eigenvalues ascending and the matching unitary column matrix.
    ``off_tol`` is the absolute off-diagonal magnitude at which iteration
    stops (callers scale it by the matrix norm).
    """
    m = np.array(a, dtype=np.complex128)
    n = m.shape[0]
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return m.real.diagonal().copy(), v

    for _ in range(max_sweeps):
        off = np.abs(m - np.diag(np.diag(m)))
        if off.max() <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = m[p, q]
                if abs(b) <= off_tol / n:
                    continue
                c, s, w = _jacobi_rotation(m[p, p].real, m[q, q].real, b)
                sw = s * np.conj(w)
                # columns: M <- M J, then rows: M <- J^dag M
                colp = m[:, p].copy()
                m[:, p] = c * colp + sw * m[:, q]
                m[:, q] = -s * w * colp + c * m[:, q]
                rowp = m[p, :].copy()
                m[p, :] = c * rowp + s * w * m[q, :]
                m[q, :] = -sw * rowp + c * m[q, :]
                m[p, q] = 0.0
                m[q, p] = 0.0
                vcolp = v[:, p].copy()
                v[:, p] = c * vcolp + sw * v[:, q]
                v[:, q] = -s * w * vcolp + c * v[:, q]
    else:
        raise EigenConvergenceError(
            f"Jacobi did not reach off-diagonal {off_tol:.2e} in {max_sweeps} sweeps",
            partial=np.diag(m).real.copy(),
        )

    w_out = np.diag(m).real.copy()
    order = np.argsort(w_out, kind="stable")
    return w_out[order], v[:, order]


def _householder_hessenberg(a: np.ndarray) -> np.ndarray:
    h = np.array(a, dtype=np.complex128)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        normx = np.linalg.norm(x)
        if normx <= _EPS * max(1.0, np.abs(h).max()):
            h[k + 2:, k] = 0.0
            continue
        v = x.copy()
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v[0] += phase * normx
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 1, k] = -phase * normx
        h[k + 2:, k] = 0.0
    return h


def _givens(f: complex, g: complex):
    """(c, s) with [[c, s], [-conj(s), c]] @ (f, g) = (r, 0); c real."""
    if g == 0:
        return 1.0, 0.0 + 0.0j
    if f == 0:
        return 0.0, np.conj(g) / abs(g)
    d = np.hypot(abs(f), abs(g))
    c = abs(f) / d
    s = (f / abs(f)) * np.conj(g) / d
    return c, s


def _wilkinson_shift(h: np.ndarray, m: int) -> complex:
    a, b = h[m - 1, m - 1], h[m - 1, m]
    c, d = h[m, m - 1], h[m, m]
    tr = a + d
    disc = np.sqrt((a - d) ** 2 + 4.0 * b * c + 0j)
    l1 = 0.5 * (tr + disc)
    l2 = 0.5 * (tr - disc)
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def _eig2(h: np.ndarray, k: int):
    a, b = h[k, k], h[k, k + 1]
    c, d = h[k + 1, k], h[k + 1, k + 1]
    tr = a + d
    det = a * d - b * c
    disc = np.sqrt(tr * tr - 4.0 * det)
    s = tr + disc if abs(tr + disc) >= abs(tr - disc) else tr - disc
    if s == 0:
        return 0.0 + 0.0j, 0.0 + 0.0j
    l1 = 0.5 * s
    return l1, det / l1


def hessenberg_qr_eigvals(a: np.ndarray, iter_cap: int) -> np.ndarray:
    """All eigenvalues of a square complex matrix (Hessenberg + shifted QR)."""
    n = a.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.complex128)
    if n == 1:
        return np.array([complex(a[0, 0])], dtype=np.complex128)
    h = _householder_hessenberg(a)
    anorm = max(np.abs(h).max(), 1e-300)
    eigs = np.empty(n, dtype=np.complex128)
    hi = n - 1
    total = 0
    stagnant = 0
    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        # deflate converged subdiagonals
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            if sub <= _EPS * (abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])) + 1e-300 * anorm:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigs[hi] = h[hi, hi]
            hi -= 1
            stagnant = 0
            continue
        if lo == hi - 1:
            eigs[hi - 1], eigs[hi] = _eig2(h, hi - 1)
            hi -= 2
            stagnant = 0
            continue
        total += 1
        stagnant += 1
        if total > iter_cap:
            raise EigenConvergenceError(
                f"QR iteration cap {iter_cap} reached with {n - 1 - hi} of {n} "
                "eigenvalues converged",
                partial=eigs[hi + 1:].copy(),
            )
        if stagnant % 10 == 0:
            sigma = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            sigma = _wilkinson_shift(h, hi)
        # implicit single-shift bulge chase confined to the active window
        f = h[lo, lo] - sigma
        g = h[lo + 1, lo]
        for k in range(lo, hi):
            c, s = _givens(f, g)
            cs = np.conj(s)
            j0 = k - 1 if k > lo else lo
            r1 = h[k, j0:hi + 1].copy()
            r2 = h[k + 1, j0:hi + 1]
            h[k, j0:hi + 1] = c * r1 + s * r2
            h[k + 1, j0:hi + 1] = -cs * r1 + c * r2
            i1 = min(k + 2, hi)
            c1 = h[lo:i1 + 1, k].copy()
            c2 = h[lo:i1 + 1, k + 1]
            h[lo:i1 + 1, k] = c * c1 + cs * c2
            h[lo:i1 + 1, k + 1] = -s * c1 + c * c2
            if k > lo:
                h[k + 1, k - 1] = 0.0
            if k < hi - 1:
                f = h[k + 1, k]
                g = h[k + 2, k]
    return eigs
