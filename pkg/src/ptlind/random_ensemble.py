"""Random jump operators from the Gaussian orthogonal ensemble.

A real symmetric matrix R is shifted by its lowest eigenvalue so that
R' = R - lambda_0 I is positive semidefinite with exactly one zero
eigenvalue, then factored as R' = O O^dag through its eigenbasis with a
lower-triangular core whose only nonzero band is the first subdiagonal.
The resulting O is traceless, rank d-1 and has a single dark state on each
side, which is what makes the strong-dissipation phase pure.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import linalg
from .operators import LindbladModel, build_model
from .tolerances import DEFAULT, Tolerances

log = logging.getLogger(__name__)


@dataclass
class RandomJumpInstance:
    d: int
    O: np.ndarray
    seed: int
    eigenvalues_of_r_prime: np.ndarray  # ascending, first entry 0
    dark: np.ndarray  # |D>  with O |D> = 0
    dark_star: np.ndarray  # |D*> with O^dag |D*> = 0


def goe_matrix(d: int, sampler: linalg.SeededSampler) -> np.ndarray:
    """Symmetrized matrix of standard normal entries, R = (G + G^T) / 2."""
    g = linalg.sample_gaussian(sampler, d * d).reshape(d, d)
    return 0.5 * (g + g.T)


def sample_random_jump(d: int, seed: int, tol: Tolerances = DEFAULT) -> RandomJumpInstance:
    """Draw one traceless rank-(d-1) jump operator; resamples on degeneracy."""
    if d < 2:
        raise ValueError(f"local dimension must be >= 2, got {d}")
    attempt_seed = int(seed)
    while True:
        r = goe_matrix(d, linalg.SeededSampler(attempt_seed)).astype(complex)
        lam, u = linalg.hermitian_eig(r, tol)
        shifted = lam - lam[0]
        if d > 1 and np.diff(shifted).min() < 1e-12:
            log.info("degenerate R' spectrum for seed %d; resampling", attempt_seed)
            attempt_seed += 1
            continue
        core = np.zeros((d, d), dtype=complex)
        for k in range(1, d):
            core[k, k - 1] = np.sqrt(shifted[k])
        o = u @ core @ u.conj().T
        return RandomJumpInstance(
            d=d,
            O=o,
            seed=attempt_seed,
            eigenvalues_of_r_prime=shifted,
            dark=u[:, d - 1],
            dark_star=u[:, 0],
        )


def random_model(
    d: int,
    seed: int,
    g: float,
    Gamma: float,
    tol: Tolerances = DEFAULT,
) -> tuple[LindbladModel, RandomJumpInstance]:
    inst = sample_random_jump(d, seed, tol)
    model = build_model("custom", d, g, Gamma, {"O": inst.O, "seed": inst.seed}, tol)
    return model, inst


def ensemble_sweep(
    d: int,
    instances: int,
    seed_base: int,
    gamma_over_g: np.ndarray,
    g: float = 1.0,
    backend: str = "auto",
    tol: Tolerances = DEFAULT,
) -> list[list[dict]]:
    """Solve every instance over the rate grid; one record dict per point.

    Instance k uses seed ``seed_base + k``. Solver errors propagate with the
    instance seed attached.
    """
    from .steadystate import compute_observables, solve_steady_state

    if instances < 1:
        raise ValueError("need at least one instance")
    out = []
    for k in range(instances):
        inst = sample_random_jump(d, seed_base + k, tol)
        rows = []
        for ratio in np.asarray(gamma_over_g, dtype=float):
            model = build_model(
                "custom", d, g, ratio * g, {"O": inst.O, "seed": inst.seed}, tol
            )
            try:
                res = solve_steady_state(model, backend, tol)
            except Exception as exc:
                raise type(exc)(f"instance seed {inst.seed}, Gamma/g={ratio}: {exc}") from exc
            obs = compute_observables(model, res.rho, tol)
            rows.append(
                {
                    "modelKind": "random",
                    "d": d,
                    "seed": inst.seed,
                    "g": g,
                    "gammaOverG": float(ratio),
                    "delta": obs.delta,
                    "purity": obs.purity,
                    "negativity": obs.negativity,
                    "occA": obs.occA,
                    "occB": obs.occB,
                    "residual": res.residual,
                    "solver": res.solver,
                }
            )
        out.append(rows)
    return out


def nn_spacings(eigenvalues: np.ndarray, keep_middle: float = 0.5) -> np.ndarray:
    """Nearest-neighbour spacings of the middle of a sorted spectrum,
    normalized by their mean (crude unfolding)."""
    w = np.sort(np.asarray(eigenvalues, dtype=float))
    k = len(w)
    lo = int((1 - keep_middle) / 2 * k)
    hi = k - lo
    s = np.diff(w[lo:hi])
    return s / s.mean()
