import numpy as np
import pytest

from ptlind.errors import DegenerateNullspaceError, InvalidModelError, PtlindError
from ptlind.operators import build_model, spin_ops
from ptlind.steadystate import (
    compute_observables,
    dark_product_state,
    fidelity_with_pure,
    negativity,
    positivity_repair,
    solve_steady_state,
)

GRID = (0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0)


def _steady_obs(kind, size, ratio, extra=None, backend="direct"):
    model = build_model(kind, size, 1.0, ratio, extra)
    res = solve_steady_state(model, backend)
    return model, res, compute_observables(model, res.rho)


class TestSolve:
    @pytest.mark.parametrize("kind,size", [("spin", 1.0), ("boson", 3)])
    def test_dissipation_only_gives_dark_product(self, kind, size):
        model = build_model(kind, size, 0.0, 1.0)
        res = solve_steady_state(model, "direct")
        dark = dark_product_state(model)
        assert np.abs(res.rho - dark).max() <= 1e-10
        obs = compute_observables(model, res.rho)
        assert obs.delta_defined and abs(obs.delta - 1.0) <= 1e-10

    def test_weak_dissipation_fully_mixed(self):
        _, res, obs = _steady_obs("spin", 1.0, 0.01)
        assert abs(obs.purity - 1.0 / 9.0) <= 0.05 / 9.0
        assert res.residual <= 1e-10

    def test_strong_dissipation_dark_state(self):
        model, res, obs = _steady_obs("spin", 1.0, 100.0)
        dark = dark_product_state(model)
        psi = None
        overlap = float(np.trace(dark @ res.rho).real)
        assert overlap > 0.99
        assert obs.delta > 0.99 and obs.purity > 0.99

    def test_backends_agree(self):
        model = build_model("spin", 1.0, 1.0, 1.0)
        direct = solve_steady_state(model, "direct")
        relax = solve_steady_state(model, "relax")
        assert np.abs(direct.rho - relax.rho).max() <= 1e-6
        assert relax.iterations > 1

    def test_auto_picks_direct_small(self):
        model = build_model("spin", 0.5, 1.0, 1.0)
        assert solve_steady_state(model, "auto").solver == "direct"

    def test_gamma_zero_rejected(self):
        model = build_model("spin", 1.0, 1.0, 0.0)
        with pytest.raises(InvalidModelError):
            solve_steady_state(model)

    def test_degenerate_manifold_flagged(self):
        # Hermitian generator: the fully mixed state and others are all steady
        model = build_model("custom", 2, 1.0, 1.0, {"O": np.diag([1.0, -1.0]).astype(complex)})
        with pytest.raises(DegenerateNullspaceError):
            solve_steady_state(model, "direct")

    def test_result_is_density_matrix(self):
        _, res, _ = _steady_obs("multijump", 1.0, 1.0, {"p": 0.8})
        assert abs(np.trace(res.rho).real - 1.0) <= 1e-10
        assert np.abs(res.rho - res.rho.conj().T).max() <= 1e-9
        w = np.linalg.eigvalsh(res.rho)
        assert w.min() >= -1e-8


class TestObservables:
    def test_fully_mixed_symmetric(self):
        model = build_model("spin", 1.0, 1.0, 0.5)
        obs = compute_observables(model, np.eye(9, dtype=complex) / 9.0)
        assert obs.delta_defined and obs.delta <= 1e-12

    def test_dark_product_fully_asymmetric(self):
        model = build_model("spin", 1.5, 1.0, 0.5)
        obs = compute_observables(model, dark_product_state(model))
        assert abs(obs.delta - 1.0) <= 1e-12

    def test_pure_state_purity(self):
        model = build_model("spin", 1.0, 1.0, 0.5)
        obs = compute_observables(model, dark_product_state(model))
        assert abs(obs.purity - 1.0) <= 1e-12

    def test_delta_undefined_when_both_dark(self):
        model = build_model("spin", 1.0, 1.0, 0.5)
        d = model.d
        psi = np.zeros(d * d)
        psi[0] = 1.0  # |top, top>: raising operator annihilates both sides
        obs = compute_observables(model, np.outer(psi, psi))
        assert not obs.delta_defined

    def test_delta_bounded(self):
        for ratio in (0.1, 1.0, 10.0):
            _, _, obs = _steady_obs("boson", 3, ratio)
            assert 0.0 <= obs.delta <= 1.0


class TestNegativity:
    def test_product_state_zero(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        ra = a @ a.conj().T
        ra /= np.trace(ra).real
        rho = np.kron(ra, ra)
        assert negativity(rho, 3, 3) <= 1e-12

    def test_bell_state_half(self):
        psi = np.zeros(4)
        psi[0] = psi[3] = 1 / np.sqrt(2)
        assert abs(negativity(np.outer(psi, psi), 2, 2) - 0.5) <= 1e-12


class TestPositivityRepair:
    def test_clips_roundoff(self):
        rho = np.diag([0.6, 0.4 + 5e-9, -5e-9]).astype(complex)
        out = positivity_repair(rho)
        w = np.linalg.eigvalsh(out)
        assert w.min() >= 0
        assert abs(np.trace(out).real - 1.0) <= 1e-12

    def test_rejects_large_negative(self):
        rho = np.diag([0.8, 0.3, -0.1]).astype(complex)
        with pytest.raises(PtlindError):
            positivity_repair(rho)


class TestPhenomenology:
    @pytest.mark.parametrize("S", [0.5, 1.0, 2.0])
    def test_delta_monotone_in_rate(self, S):
        deltas = [_steady_obs("spin", S, r)[2].delta for r in GRID]
        for lo, hi in zip(deltas, deltas[1:]):
            assert hi >= lo - 1e-6

    def test_transition_sharpens_with_spin(self):
        # contrast between the two sides of the transition grows with S,
        # while each fixed-ratio value converges down to its large-S limit
        contrasts = []
        for S in (0.5, 1.0, 2.0):
            low = _steady_obs("spin", S, 0.5)[2].delta
            high = _steady_obs("spin", S, 2.0)[2].delta
            contrasts.append(high / low)
        assert all(b > a for a, b in zip(contrasts, contrasts[1:]))

    def test_boson_truncation_converges_on_symmetric_side(self):
        # the truncated raising operator is used in H as well; below the
        # transition the cutoff family behaves like the spin family
        # (symmetry parameter shrinks toward zero as the cutoff grows)
        deltas = [_steady_obs("boson", d, 0.5)[2].delta for d in (3, 5, 7)]
        assert all(b < a for a, b in zip(deltas, deltas[1:]))

    def test_appendix_a_pinned_state(self):
        model = build_model("appendixA", 1.0, 1.0, 1.0)
        d = model.d
        psi = np.zeros(d * d)
        psi[(d - 1) * d + 0] = 1.0  # |m_A = -S> (x) |m_B = +S>
        for ratio in (0.1, 1.0, 10.0):
            m = build_model("appendixA", 1.0, 1.0, ratio)
            res = solve_steady_state(m, "direct")
            assert fidelity_with_pure(res.rho, psi) > 1.0 - 1e-8

    def test_generalized_occupations_symmetric(self):
        from ptlind.steadystate import local_expectation

        ops = spin_ops(1.0)
        n_op = ops.raise_ @ ops.lower  # S^+ S^-
        for ratio in (0.1, 1.0, 10.0):
            model = build_model("generalized", 1.0, 1.0, ratio)
            rho = solve_steady_state(model, "direct").rho
            occ_a, occ_b = local_expectation(rho, model.d, n_op)
            assert abs(occ_a - occ_b) <= 1e-8

    def test_generalized_purity_transition(self):
        lo = _steady_obs("generalized", 1.0, 0.01)[2].purity
        hi = _steady_obs("generalized", 1.0, 100.0)[2].purity
        assert abs(lo - 1.0 / 9.0) <= 0.1 / 9.0
        assert hi >= 3.0 * lo
