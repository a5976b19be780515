"""Compiled kernels and the pure-python fallback must agree."""

import numpy as np
import pytest

import ptlind.linalg as la
from ptlind.linalg import _kernels_py

cy = pytest.importorskip("ptlind.linalg._kernels")


def _rand_herm(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


@pytest.mark.parametrize("n", [2, 5, 17, 40])
def test_jacobi_backends_agree(n):
    rng = np.random.default_rng(n)
    m = _rand_herm(rng, n)
    tol = 1e-13 * np.abs(m).max()
    w_cy, v_cy = cy.jacobi_eigh(m, tol)
    w_py, v_py = _kernels_py.jacobi_eigh(m, tol)
    assert np.abs(w_cy - w_py).max() <= 1e-10 * np.abs(m).max()
    for v in (v_cy, v_py):
        assert np.abs(v @ np.diag(w_cy) @ v.conj().T - m).max() <= 1e-10 * np.abs(m).max()


@pytest.mark.parametrize("n", [2, 6, 23, 50])
def test_qr_backends_agree(n):
    rng = np.random.default_rng(100 + n)
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    w_cy = np.sort_complex(cy.hessenberg_qr_eigvals(m, 100 * n))
    w_py = np.sort_complex(_kernels_py.hessenberg_qr_eigvals(m, 100 * n))
    for lam in w_cy:
        j = int(np.argmin(np.abs(w_py - lam)))
        assert abs(w_py[j] - lam) <= 1e-9 * max(1.0, np.abs(w_cy).max())
        w_py = np.delete(w_py, j)


def test_backend_reported():
    assert la.KERNEL_BACKEND in ("cy", "py")
