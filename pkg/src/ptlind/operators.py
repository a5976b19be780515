"""Subsystem operators, the parity swap, PT maps and the model catalog.

Every model couples two subsystems of equal local dimension ``d`` through an
exchange Hamiltonian ``H = g (O_A O_B^dag + O_A^dag O_B)`` and dissipates
through jump operators that map into each other under the anti-unitary
transformation ``PT(O) = P O^dag P^-1`` (optionally with an extra unitary,
``PT(O) = P U O^dag (U P)^-1``).

Rate convention: a jump operator built from the dimensionless ``O`` is stored
as ``sqrt(2 Gamma) * O``, i.e. ``Gamma`` is the amplitude-decay rate of a
single mode. With this normalization the balanced gain/loss instability of
the linearized spin dimer sits at ``Gamma = g`` and the large-spin closed
forms (purity ``1 - g^2/Gamma^2``, negativity ``g/(2 Gamma)``) hold verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .errors import InvalidModelError
from .tolerances import DEFAULT, Tolerances

KINDS = ("spin", "boson", "multijump", "generalized", "appendixA", "custom")


@dataclass
class SubsystemOps:
    """Ladder and diagonal operators of one d-dimensional subsystem."""

    d: int
    raise_: np.ndarray
    lower: np.ndarray
    z: np.ndarray
    x: np.ndarray
    kind: str


@dataclass
class PTMapSpec:
    """Parity-swap operator plus an optional extra unitary (generalized map)."""

    parity: np.ndarray
    extra_unitary: Optional[np.ndarray] = None


@dataclass
class LindbladModel:
    kind: str
    d: int
    g: float
    Gamma: float
    H: np.ndarray
    jumps: list[np.ndarray]
    O: Optional[np.ndarray]  # d x d dimensionless jump generator, if any
    ops: Optional[SubsystemOps]
    pt_spec: PTMapSpec
    extra: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        """Bipartite Hilbert-space dimension."""
        return self.d * self.d

    def jump_products(self) -> list[np.ndarray]:
        """Cached c^dag c for each jump."""
        if "_cdc" not in self.extra:
            self.extra["_cdc"] = [c.conj().T @ c for c in self.jumps]
        return self.extra["_cdc"]


def spin_ops(S: float) -> SubsystemOps:
    """Spin operators for half-integer S; basis ordered m = S..-S."""
    twoS = 2.0 * S
    if S <= 0 or abs(twoS - round(twoS)) > 1e-12:
        raise InvalidModelError(f"S must be a positive half-integer, got {S}")
    d = int(round(twoS)) + 1
    m = S - np.arange(d)
    z = np.diag(m).astype(complex)
    raise_ = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        raise_[k - 1, k] = np.sqrt(S * (S + 1) - m[k] * (m[k] + 1))
    lower = raise_.conj().T
    x = 0.5 * (raise_ + lower)
    return SubsystemOps(d=d, raise_=raise_, lower=lower, z=z, x=x, kind="spin")


def boson_ops(d: int) -> SubsystemOps:
    """Truncated bosonic ladder operators; ``raise_ @ e[d-1] = 0``."""
    if d < 2:
        raise InvalidModelError(f"boson cutoff dimension must be >= 2, got {d}")
    lower = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        lower[n - 1, n] = np.sqrt(n)
    raise_ = lower.conj().T
    number = raise_ @ lower
    x = 0.5 * (raise_ + lower)
    return SubsystemOps(d=d, raise_=raise_, lower=lower, z=number, x=x, kind="boson")


def parity_swap(d: int) -> np.ndarray:
    """Permutation P on C^d (x) C^d with P (v (x) w) = w (x) v."""
    n = d * d
    p = np.zeros((n, n), dtype=complex)
    for i in range(d):
        for j in range(d):
            p[i * d + j, j * d + i] = 1.0
    return p


def pt_map(op: np.ndarray, spec: PTMapSpec) -> np.ndarray:
    """Anti-unitary loss/gain exchange: P O^dag P^-1, or P U O^dag (U P)^-1."""
    op = np.asarray(op, dtype=complex)
    p = spec.parity
    if op.shape != p.shape:
        raise InvalidModelError(f"operator shape {op.shape} != parity shape {p.shape}")
    if spec.extra_unitary is None:
        return p @ op.conj().T @ p
    u = spec.extra_unitary
    return p @ u @ op.conj().T @ p @ u.conj().T


def _unitary_from_hermitian(generator: np.ndarray, tol: Tolerances) -> np.ndarray:
    """exp(i * generator) by eigendecomposition of the Hermitian generator."""
    w, v = linalg.hermitian_eig(generator, tol)
    return (v * np.exp(1j * w)) @ v.conj().T


def _embed(op: np.ndarray, d: int, site: str) -> np.ndarray:
    eye = np.eye(d, dtype=complex)
    return linalg.kron(op, eye) if site == "A" else linalg.kron(eye, op)


def _exchange_hamiltonian(O: np.ndarray, g: float) -> np.ndarray:
    d = O.shape[0]
    oa = _embed(O, d, "A")
    ob = _embed(O, d, "B")
    h = g * (oa @ ob.conj().T + oa.conj().T @ ob)
    return 0.5 * (h + h.conj().T)


def build_model(
    kind: str,
    S_or_d,
    g: float,
    Gamma: float,
    extra: Optional[dict] = None,
    tol: Tolerances = DEFAULT,
) -> LindbladModel:
    """Construct a catalog model.

    ``extra`` carries kind-specific parameters: ``p`` for ``multijump``,
    ``O`` (a d x d array) for ``custom``, optionally ``seed`` for bookkeeping.
    ``g = 0`` is allowed (dissipation-only model); negative rates are not.
    """
    extra = dict(extra or {})
    if kind not in KINDS:
        raise InvalidModelError(f"unknown model kind {kind!r}; expected one of {KINDS}")
    if g < 0:
        raise InvalidModelError(f"coupling g must be >= 0, got {g}")
    if Gamma < 0:
        raise InvalidModelError(f"rate Gamma must be >= 0, got {Gamma}")

    scale = np.sqrt(2.0 * Gamma)
    ops: Optional[SubsystemOps] = None

    if kind == "custom":
        O = np.asarray(extra.get("O"), dtype=complex)
        if O.ndim != 2 or O.shape[0] != O.shape[1]:
            raise InvalidModelError("custom kind needs a square d x d operator in extra['O']")
        d = O.shape[0]
    elif kind == "boson":
        ops = boson_ops(int(S_or_d))
        d = ops.d
        O = ops.raise_
    else:
        ops = spin_ops(float(S_or_d))
        d = ops.d
        O = ops.raise_

    spec = PTMapSpec(parity=parity_swap(d))

    if kind in ("spin", "boson", "custom"):
        H = _exchange_hamiltonian(O, g)
        jumps = [scale * _embed(O, d, "A"), scale * _embed(O.conj().T, d, "B")]
    elif kind == "multijump":
        p = float(extra.get("p", 0.0))
        if not 0.0 <= p <= 1.0:
            raise InvalidModelError(f"multijump weight p must be in [0, 1], got {p}")
        H = _exchange_hamiltonian(O, g)
        sp, sm = ops.raise_, ops.lower
        weighted = [
            (np.sqrt((1 + p) / 2), sp, "A"),
            (np.sqrt((1 - p) / 2), sm, "A"),
            (np.sqrt((1 - p) / 2), sp, "B"),
            (np.sqrt((1 + p) / 2), sm, "B"),
        ]
        jumps = [scale * w * _embed(op, d, site) for w, op, site in weighted if w > 0]
    elif kind in ("generalized", "appendixA"):
        sp, sm = ops.raise_, ops.lower
        oa, ob = _embed(sp, d, "A"), _embed(sp, d, "B")
        H = g * (oa @ ob + oa.conj().T @ ob.conj().T)
        H = 0.5 * (H + H.conj().T)
        if kind == "generalized":
            jumps = [scale * _embed(sm, d, "A"), scale * _embed(sm, d, "B")]
            gen = np.pi * (_embed(ops.x, d, "A") + _embed(ops.x, d, "B"))
            spec.extra_unitary = _unitary_from_hermitian(gen, tol)
        else:
            jumps = [scale * _embed(sm, d, "A"), scale * _embed(sp, d, "B")]
    else:  # pragma: no cover
        raise InvalidModelError(kind)

    defect = np.abs(H - H.conj().T).max()
    if defect > tol.herm_tag * max(np.abs(H).max(), 1e-300):
        raise InvalidModelError(f"built Hamiltonian is not Hermitian (defect {defect:.2e})")

    return LindbladModel(
        kind=kind,
        d=d,
        g=float(g),
        Gamma=float(Gamma),
        H=H,
        jumps=jumps,
        O=O,
        ops=ops,
        pt_spec=spec,
        extra=extra,
    )


def model_from_operators(
    d: int,
    h_dimless: np.ndarray,
    jumps_dimless: list[np.ndarray],
    g: float,
    Gamma: float,
    O: Optional[np.ndarray] = None,
    tol: Tolerances = DEFAULT,
) -> LindbladModel:
    """Raw custom model from dimensionless matrices: ``H = g * h_dimless``,
    ``c_k = sqrt(2 Gamma) * jumps_dimless[k]``.

    When no generator O is given, one is recovered from the first jump if it
    has the product form ``O (x) 1`` (needed for the symmetry parameter).
    """
    n = d * d
    h_dimless = np.asarray(h_dimless, dtype=complex)
    if h_dimless.shape != (n, n):
        raise InvalidModelError(f"H must be {n}x{n} for local dimension {d}")
    for c in jumps_dimless:
        if np.asarray(c).shape != (n, n):
            raise InvalidModelError(f"every jump must be {n}x{n} for local dimension {d}")
    H = g * h_dimless
    if np.abs(H - H.conj().T).max() > tol.herm_tag * max(np.abs(H).max(), 1e-300):
        raise InvalidModelError("H from file is not Hermitian")
    scale = np.sqrt(2.0 * Gamma)
    jumps = [scale * np.asarray(c, dtype=complex) for c in jumps_dimless]
    if O is None and jumps_dimless:
        c0 = np.asarray(jumps_dimless[0], dtype=complex)
        cand = c0.reshape(d, d, d, d).trace(axis1=1, axis2=3) / d
        if np.abs(linalg.kron(cand, np.eye(d)) - c0).max() <= 1e-12 * max(np.abs(c0).max(), 1e-300):
            O = cand
    return LindbladModel(
        kind="custom",
        d=d,
        g=float(g),
        Gamma=float(Gamma),
        H=H,
        jumps=jumps,
        O=O,
        ops=None,
        pt_spec=PTMapSpec(parity=parity_swap(d)),
        extra={},
    )
