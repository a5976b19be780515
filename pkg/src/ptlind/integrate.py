"""Embedded Runge-Kutta 4(5) stepping for density matrices.

Dormand-Prince coefficients with FSAL; step control on the max-norm of the
embedded error against a per-entry absolute tolerance.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .errors import IntegrationError

_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_E = _B5 - _B4
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])


class AdaptiveRK:
    """Minimal adaptive Dormand-Prince 5(4) integrator over matrix states."""

    def __init__(
        self,
        rhs: Callable[[np.ndarray], np.ndarray],
        atol: float = 1e-10,
        max_rhs_evals: int = 10_000_000,
    ):
        self.rhs = rhs
        self.atol = atol
        self.max_rhs_evals = max_rhs_evals
        self.rhs_evals = 0
        self.steps = 0

    def _eval(self, y: np.ndarray) -> np.ndarray:
        self.rhs_evals += 1
        if self.rhs_evals > self.max_rhs_evals:
            raise IntegrationError(
                f"step budget exhausted ({self.max_rhs_evals} right-hand-side evaluations)"
            )
        return self.rhs(y)

    def run(
        self,
        y0: np.ndarray,
        t0: float,
        h0: float,
        *,
        t_end: Optional[float] = None,
        stop: Optional[Callable[[np.ndarray, np.ndarray], bool]] = None,
        on_step: Optional[Callable[[float, np.ndarray], None]] = None,
        post: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        sample_times: Optional[np.ndarray] = None,
        on_sample: Optional[Callable[[float, np.ndarray], None]] = None,
    ):
        """Integrate from (t0, y0).

        Runs until ``t_end``, or until ``stop(y, f)`` returns True. ``post``
        (e.g. Hermitization) is applied to each accepted state.
        ``sample_times`` must be increasing; steps land exactly on them and
        ``on_sample`` is called there.
        """
        t = float(t0)
        y = np.array(y0, dtype=complex)
        h = float(h0)
        f = self._eval(y)
        sample_iter = iter(sample_times) if sample_times is not None else None
        next_sample = next(sample_iter, None) if sample_iter else None
        if next_sample is not None and abs(next_sample - t) <= 1e-15 * max(1.0, abs(t)):
            if on_sample:
                on_sample(t, y)
            next_sample = next(sample_iter, None)

        k = [None] * 7
        while True:
            if t_end is not None and t >= t_end - 1e-12 * max(1.0, abs(t_end)):
                break
            if stop is not None and stop(y, f):
                break
            h_target = h
            if next_sample is not None:
                h_target = min(h_target, next_sample - t)
            if t_end is not None:
                h_target = min(h_target, t_end - t)
            if h_target <= 1e-15 * max(1.0, abs(t)):
                raise IntegrationError(f"step size underflow at t = {t:.6g}")

            k[0] = f
            for i in range(1, 7):
                yi = y + h_target * sum(a * k[j] for j, a in enumerate(_A[i]) if a != 0.0)
                k[i] = self._eval(yi)
            y5 = y + h_target * sum(b * k[j] for j, b in enumerate(_B5) if b != 0.0)
            err = h_target * sum(e * k[j] for j, e in enumerate(_E) if e != 0.0)
            errnorm = np.abs(err).max() / self.atol

            if errnorm <= 1.0:
                t = t + h_target
                if post is not None:
                    y = post(y5)
                    f = self._eval(y)
                else:
                    y = y5
                    f = k[6]  # FSAL
                self.steps += 1
                if on_step:
                    on_step(t, y)
                if next_sample is not None and t >= next_sample - 1e-12 * max(1.0, abs(t)):
                    if on_sample:
                        on_sample(t, y)
                    next_sample = next(sample_iter, None)
            factor = 0.9 * errnorm ** -0.2 if errnorm > 0 else 5.0
            h = h_target * min(5.0, max(0.2, factor))
        return t, y
