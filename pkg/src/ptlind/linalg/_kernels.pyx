# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled eigensolver kernels.

Same algorithms as ``_kernels_py``: cyclic Jacobi for Hermitian matrices and
Hessenberg reduction + implicitly shifted QR for general complex eigenvalues.
Scalar loops over contiguous C-ordered arrays; no BLAS dependency.
"""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.math cimport hypot, sqrt

from ..errors import EigenConvergenceError

cnp.import_array()

DEF EPS = 2.220446049250313e-16


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cmag(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline double complex csqrt_c(double complex z) noexcept nogil:
    # principal branch; Re >= 0
    cdef double m = hypot(z.real, z.imag)
    cdef double re = sqrt(0.5 * (m + z.real))
    cdef double im = sqrt(0.5 * (m - z.real))
    if z.imag < 0.0:
        im = -im
    return re + 1j * im


def jacobi_eigh(a, double off_tol, int max_sweeps=60):
    """Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary eigenvector columns).
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] m = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = m.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([m[0, 0].real]), v

    cdef double complex[:, ::1] M = m
    cdef double complex[:, ::1] V = v
    cdef Py_ssize_t p, q, k, sweep
    cdef double app, aqq, absb, tau, t, c, s, off, skip_tol
    cdef double complex b, w, sw, swc, tmp1, tmp2
    cdef bint converged = False

    skip_tol = off_tol / n
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                if cmag(M[p, q]) > off:
                    off = cmag(M[p, q])
        if off <= off_tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = M[p, q]
                absb = cmag(b)
                if absb <= skip_tol:
                    continue
                app = M[p, p].real
                aqq = M[q, q].real
                w = b / absb
                tau = (aqq - app) / (2.0 * absb)
                if tau >= 0.0:
                    t = -1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sw = s * w
                swc = s * (w.real - 1j * w.imag)
                for k in range(n):
                    tmp1 = M[k, p]
                    tmp2 = M[k, q]
                    M[k, p] = c * tmp1 + swc * tmp2
                    M[k, q] = -sw * tmp1 + c * tmp2
                for k in range(n):
                    tmp1 = M[p, k]
                    tmp2 = M[q, k]
                    M[p, k] = c * tmp1 + sw * tmp2
                    M[q, k] = -swc * tmp1 + c * tmp2
                M[p, q] = 0.0
                M[q, p] = 0.0
                for k in range(n):
                    tmp1 = V[k, p]
                    tmp2 = V[k, q]
                    V[k, p] = c * tmp1 + swc * tmp2
                    V[k, q] = -sw * tmp1 + c * tmp2
    if not converged:
        raise EigenConvergenceError(
            f"Jacobi did not reach off-diagonal {off_tol:.2e} in {max_sweeps} sweeps",
            partial=np.diag(m).real.copy(),
        )
    wout = np.diag(m).real.copy()
    order = np.argsort(wout, kind="stable")
    return wout[order], v[:, order]


cdef void _householder_hessenberg(double complex[:, ::1] H, Py_ssize_t n,
                                  double complex[::1] vwork, double complex[::1] wwork,
                                  double anorm) noexcept nogil:
    cdef Py_ssize_t k, i, j, m
    cdef double normx, vnorm
    cdef double complex phase, alpha, acc
    for k in range(n - 2):
        m = n - k - 1  # length of the column tail
        normx = 0.0
        for i in range(k + 1, n):
            normx += cabs2(H[i, k])
        normx = sqrt(normx)
        if normx <= EPS * anorm:
            for i in range(k + 2, n):
                H[i, k] = 0.0
            continue
        if H[k + 1, k] != 0:
            phase = H[k + 1, k] / cmag(H[k + 1, k])
        else:
            phase = 1.0
        alpha = -phase * normx
        vnorm = 0.0
        for i in range(m):
            vwork[i] = H[k + 1 + i, k]
        vwork[0] = vwork[0] - alpha
        for i in range(m):
            vnorm += cabs2(vwork[i])
        if vnorm == 0.0:
            continue
        vnorm = sqrt(vnorm)
        for i in range(m):
            vwork[i] = vwork[i] / vnorm
        # left: rows k+1..n-1, columns k..n-1
        for j in range(k, n):
            acc = 0.0
            for i in range(m):
                acc = acc + (vwork[i].real - 1j * vwork[i].imag) * H[k + 1 + i, j]
            wwork[j] = acc
        for i in range(m):
            for j in range(k, n):
                H[k + 1 + i, j] = H[k + 1 + i, j] - 2.0 * vwork[i] * wwork[j]
        # right: all rows, columns k+1..n-1
        for i in range(n):
            acc = 0.0
            for j in range(m):
                acc = acc + H[i, k + 1 + j] * vwork[j]
            wwork[i] = acc
        for i in range(n):
            for j in range(m):
                H[i, k + 1 + j] = H[i, k + 1 + j] - 2.0 * wwork[i] * (vwork[j].real - 1j * vwork[j].imag)
        H[k + 1, k] = alpha
        for i in range(k + 2, n):
            H[i, k] = 0.0


cdef inline void _givens(double complex f, double complex g,
                         double *c, double complex *s) noexcept nogil:
    cdef double d, af
    if g == 0:
        c[0] = 1.0
        s[0] = 0.0
        return
    if f == 0:
        c[0] = 0.0
        s[0] = (g.real - 1j * g.imag) / cmag(g)
        return
    af = cmag(f)
    d = hypot(af, cmag(g))
    c[0] = af / d
    s[0] = (f / af) * ((g.real - 1j * g.imag) / d)


cdef double complex _wilkinson(double complex a, double complex b,
                               double complex c, double complex d) noexcept nogil:
    cdef double complex tr = a + d
    cdef double complex disc = (a - d) * (a - d) + 4.0 * b * c
    disc = csqrt_c(disc)
    cdef double complex l1 = 0.5 * (tr + disc)
    cdef double complex l2 = 0.5 * (tr - disc)
    if cmag(l1 - d) <= cmag(l2 - d):
        return l1
    return l2


def hessenberg_qr_eigvals(a, long iter_cap):
    """All eigenvalues of a square complex matrix."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] h = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = h.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.complex128)
    if n == 1:
        return np.array([h[0, 0]], dtype=np.complex128)

    cdef double anorm = np.abs(h).max()
    if anorm == 0.0:
        return np.zeros(n, dtype=np.complex128)
    cdef double complex[::1] vwork = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] wwork = np.empty(n, dtype=np.complex128)
    cdef double complex[:, ::1] H = h
    with nogil:
        _householder_hessenberg(H, n, vwork, wwork, anorm)

    cdef cnp.ndarray[cnp.complex128_t, ndim=1] eigs = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] E = eigs
    cdef Py_ssize_t hi = n - 1, lo, k, j, i1, j0
    cdef long total = 0
    cdef int stagnant = 0
    cdef double sub, c
    cdef double complex sigma, f, g, s, sc, t1, t2, tr, det, disc, root
    cdef bint failed = False

    with nogil:
        while hi >= 0:
            if hi == 0:
                E[0] = H[0, 0]
                break
            lo = hi
            while lo > 0:
                sub = cmag(H[lo, lo - 1])
                if sub <= EPS * (cmag(H[lo - 1, lo - 1]) + cmag(H[lo, lo])) + 1e-300 * anorm:
                    H[lo, lo - 1] = 0.0
                    break
                lo -= 1
            if lo == hi:
                E[hi] = H[hi, hi]
                hi -= 1
                stagnant = 0
                continue
            if lo == hi - 1:
                tr = H[hi - 1, hi - 1] + H[hi, hi]
                det = H[hi - 1, hi - 1] * H[hi, hi] - H[hi - 1, hi] * H[hi, hi - 1]
                disc = csqrt_c(tr * tr - 4.0 * det)
                if cmag(tr + disc) >= cmag(tr - disc):
                    root = tr + disc
                else:
                    root = tr - disc
                if root == 0:
                    E[hi - 1] = 0.0
                    E[hi] = 0.0
                else:
                    E[hi - 1] = 0.5 * root
                    E[hi] = det / (0.5 * root)
                hi -= 2
                stagnant = 0
                continue
            total += 1
            stagnant += 1
            if total > iter_cap:
                failed = True
                break
            if stagnant % 10 == 0:
                sigma = H[hi, hi] + 0.75 * cmag(H[hi, hi - 1])
            else:
                sigma = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi],
                                   H[hi, hi - 1], H[hi, hi])
            f = H[lo, lo] - sigma
            g = H[lo + 1, lo]
            for k in range(lo, hi):
                _givens(f, g, &c, &s)
                sc = s.real - 1j * s.imag
                j0 = k - 1 if k > lo else lo
                for j in range(j0, hi + 1):
                    t1 = H[k, j]
                    t2 = H[k + 1, j]
                    H[k, j] = c * t1 + s * t2
                    H[k + 1, j] = -sc * t1 + c * t2
                i1 = k + 2 if k + 2 < hi else hi
                for j in range(lo, i1 + 1):
                    t1 = H[j, k]
                    t2 = H[j, k + 1]
                    H[j, k] = c * t1 + sc * t2
                    H[j, k + 1] = -s * t1 + c * t2
                if k > lo:
                    H[k + 1, k - 1] = 0.0
                if k < hi - 1:
                    f = H[k + 1, k]
                    g = H[k + 2, k]
    if failed:
        raise EigenConvergenceError(
            f"QR iteration cap {iter_cap} reached with {n - 1 - hi} of {n} "
            "eigenvalues converged",
            partial=eigs[hi + 1:].copy(),
        )
    return eigs
