"""Large-spin analytic limit: closed-form curves and a Gaussian-moment oracle.

Expanding the spin dimer around its polarized product state maps the model
onto two bosonic modes with quadratic coupling ``H_lin = g (a b + a^dag
b^dag)`` and amplitude decay ``Gamma`` per mode. The stationary second
moments then obey a closed linear system; writing ``n = <a^dag a> = <b^dag
b>`` and ``m = <a b>`` (all other quadratics vanish),

    d n / dt = -2 g Im(m) - 2 Gamma n
    d m / dt = -i g (2 n + 1) - 2 Gamma m

whose fixed point is ``n = g^2 / (2 (Gamma^2 - g^2))`` and purely imaginary
``m``. The closed forms below follow from the two-mode Gaussian state with
covariance blocks ``nu = n + 1/2`` and ``|m|``: purity ``1/(4 (nu^2 -
|m|^2))`` and logarithmic-free negativity ``(1 - 2 nu_-)/(4 nu_-)`` with
``nu_- = nu - |m|``. The moment solve is kept separate from the closed forms
so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnstableRegimeError


@dataclass
class HPResult:
    sz_deviation: float  # excitation number displacing <S^z> from +/- S
    purity: float
    negativity: float
    delta_infinity: float


@dataclass
class GaussianMoments:
    n_a: float
    n_b: float
    m_ab: complex  # anomalous correlation <a b>

    def purity(self) -> float:
        nu = self.n_a + 0.5
        return float(1.0 / (4.0 * (nu * nu - abs(self.m_ab) ** 2)))

    def negativity(self) -> float:
        nu_minus = self.n_a + 0.5 - abs(self.m_ab)
        if nu_minus >= 0.5:
            return 0.0
        return float((1.0 - 2.0 * nu_minus) / (4.0 * nu_minus))


def _require_stable(g: float, Gamma: float):
    if g <= 0:
        raise UnstableRegimeError(f"coupling g must be positive, got {g}")
    if Gamma <= g:
        raise UnstableRegimeError(
            f"Gamma/g = {Gamma / g:.4g} <= 1: fluctuations diverge at the "
            "transition and the linearized model has no stationary state"
        )


def hp_curves(g: float, Gamma: float) -> HPResult:
    """Closed-form large-S observables; defined for Gamma > g."""
    _require_stable(g, Gamma)
    n_bar = g * g / (2.0 * (Gamma * Gamma - g * g))
    purity = 1.0 - (g / Gamma) ** 2
    neg = g / (2.0 * Gamma)
    delta_inf = 1.0 / (2.0 * n_bar + 1.0)
    return HPResult(
        sz_deviation=float(n_bar),
        purity=float(purity),
        negativity=float(neg),
        delta_infinity=float(delta_inf),
    )


def gaussian_oracle(g: float, Gamma: float) -> GaussianMoments:
    """Stationary second moments from the linear system, solved numerically.

    Unknowns (n_a, n_b, Im m); Re m decouples and vanishes. Serves as the
    independent cross-check of :func:`hp_curves`.
    """
    _require_stable(g, Gamma)
    a = np.array(
        [
            [2.0 * Gamma, 0.0, 2.0 * g],
            [0.0, 2.0 * Gamma, 2.0 * g],
            [g, g, 2.0 * Gamma],
        ]
    )
    b = np.array([0.0, 0.0, -g])
    n_a, n_b, im_m = np.linalg.solve(a, b)
    return GaussianMoments(n_a=float(n_a), n_b=float(n_b), m_ab=complex(0.0, im_m))


def delta_from_moments(mom: GaussianMoments) -> float:
    """Symmetry parameter in the large-S bookkeeping.

    With O the raising operator, ``<O_A^dag O_A> ~ 2 S n`` and
    ``<O_B^dag O_B> ~ 2 S (n + 1)``; the leading-S ratio is S-independent.
    """
    occ_a = mom.n_a
    occ_b = mom.n_b + 1.0
    return float(abs(occ_a - occ_b) / (occ_a + occ_b))
