import numpy as np
import pytest

import ptlind.linalg as la
from ptlind.errors import InvalidModelError
from ptlind.operators import (
    PTMapSpec,
    boson_ops,
    build_model,
    model_from_operators,
    parity_swap,
    pt_map,
    spin_ops,
)


class TestSpinOps:
    def test_spin_half_raise(self):
        ops = spin_ops(0.5)
        assert np.array_equal(ops.raise_, np.array([[0, 1], [0, 0]], dtype=complex))

    def test_spin_one_elements(self):
        ops = spin_ops(1.0)
        nz = ops.raise_[np.abs(ops.raise_) > 0]
        assert np.allclose(nz, np.sqrt(2.0))

    def test_commutator_large_spin(self):
        ops = spin_ops(4.0)
        comm = ops.raise_ @ ops.lower - ops.lower @ ops.raise_
        assert np.abs(comm - 2.0 * ops.z).max() <= 1e-13

    def test_adjoint_and_z(self):
        ops = spin_ops(1.5)
        assert np.abs(ops.raise_ - ops.lower.conj().T).max() == 0
        assert np.allclose(np.diag(ops.z).real, [1.5, 0.5, -0.5, -1.5])

    @pytest.mark.parametrize("bad", [0.3, 0.0, -1.0])
    def test_rejects_bad_spin(self, bad):
        with pytest.raises(InvalidModelError):
            spin_ops(bad)


class TestBosonOps:
    def test_lower_action(self):
        ops = boson_ops(4)
        e1 = np.zeros(4)
        e1[1] = 1.0
        out = ops.lower @ e1
        assert np.allclose(out, np.eye(4)[0])

    def test_raise_truncates_at_cutoff(self):
        ops = boson_ops(5)
        top = np.eye(5)[4]
        assert np.linalg.norm(ops.raise_ @ top) == 0

    def test_truncated_commutator(self):
        d = 6
        ops = boson_ops(d)
        comm = ops.lower @ ops.raise_ - ops.raise_ @ ops.lower
        proj_top = np.zeros((d, d))
        proj_top[d - 1, d - 1] = 1.0
        assert np.abs(comm - (np.eye(d) - d * proj_top)).max() <= 1e-13

    def test_rejects_small_cutoff(self):
        with pytest.raises(InvalidModelError):
            boson_ops(1)


class TestParitySwap:
    def test_swaps_basis_vectors(self):
        p = parity_swap(2)
        e0, e1 = np.eye(2)
        assert np.allclose(p @ np.kron(e0, e1), np.kron(e1, e0))

    def test_involution(self):
        p = parity_swap(3)
        assert np.abs(p @ p - np.eye(9)).max() == 0

    def test_conjugation_swaps_factors(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        p = parity_swap(3)
        lhs = p @ la.kron(a, b) @ p
        assert np.abs(lhs - la.kron(b, a)).max() <= 1e-13


class TestPtMap:
    def test_swaps_loss_and_gain(self):
        ops = spin_ops(1.0)
        spec = PTMapSpec(parity=parity_swap(3))
        c_a = np.sqrt(0.7) * la.kron(ops.raise_, np.eye(3))
        expected = np.sqrt(0.7) * la.kron(np.eye(3), ops.lower)
        assert np.abs(pt_map(c_a, spec) - expected).max() <= 1e-13

    def test_plain_map_involution(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        spec = PTMapSpec(parity=parity_swap(2))
        assert np.abs(pt_map(pt_map(x, spec), spec) - x).max() <= 1e-13

    def test_exchange_hamiltonian_invariant(self):
        model = build_model("spin", 1.0, 1.3, 0.4)
        assert np.abs(pt_map(model.H, model.pt_spec) - model.H).max() <= 1e-12

    def test_dimension_mismatch(self):
        spec = PTMapSpec(parity=parity_swap(2))
        with pytest.raises(InvalidModelError):
            pt_map(np.eye(9), spec)


class TestBuildModel:
    def test_spin_half_exchange_element(self):
        g = 1.7
        model = build_model("spin", 0.5, g, 0.2)
        # basis |up,up>, |up,down>, |down,up>, |down,down>
        assert abs(model.H[1, 2] - g) <= 1e-14
        assert abs(model.H[2, 1] - g) <= 1e-14
        assert np.abs(model.H[np.eye(4, dtype=bool)]).max() == 0

    def test_multijump_p1_reduces_to_spin(self):
        spin = build_model("spin", 1.0, 1.0, 0.7)
        multi = build_model("multijump", 1.0, 1.0, 0.7, {"p": 1.0})
        assert len(multi.jumps) == 2
        for cm, cs in zip(multi.jumps, spin.jumps):
            assert np.abs(cm - cs).max() <= 1e-13

    def test_generalized_symmetry_commutes(self):
        model = build_model("generalized", 1.0, 1.0, 0.5)
        pu = model.pt_spec.parity @ model.pt_spec.extra_unitary
        assert np.abs(pu @ model.H - model.H @ pu).max() <= 1e-12

    def test_extra_unitary_is_unitary(self):
        model = build_model("generalized", 1.5, 1.0, 0.5)
        u = model.pt_spec.extra_unitary
        assert np.abs(u @ u.conj().T - np.eye(model.n)).max() <= 1e-12

    @pytest.mark.parametrize(
        "kind,size,extra",
        [
            ("spin", 1.0, None),
            ("boson", 3, None),
            ("multijump", 1.0, {"p": 0.8}),
            ("generalized", 1.0, None),
            ("appendixA", 1.0, None),
        ],
    )
    def test_hamiltonian_parity_symmetric(self, kind, size, extra):
        model = build_model(kind, size, 1.0, 0.5, extra)
        p = model.pt_spec.parity
        if model.pt_spec.extra_unitary is not None:
            p = p @ model.pt_spec.extra_unitary
        scale = max(np.abs(model.H).max(), 1.0)
        assert np.abs(p @ model.H - model.H @ p).max() <= 1e-12 * scale

    @pytest.mark.parametrize("kind,size", [("spin", 1.0), ("boson", 4)])
    def test_jump_pair_swapped_by_pt(self, kind, size):
        model = build_model(kind, size, 1.0, 0.9)
        c1, c2 = model.jumps
        assert np.abs(pt_map(c1, model.pt_spec) - c2).max() <= 1e-12
        assert np.abs(pt_map(c2, model.pt_spec) - c1).max() <= 1e-12

    def test_gamma_zero_means_zero_jumps(self):
        model = build_model("spin", 1.0, 1.0, 0.0)
        assert all(np.abs(c).max() == 0 for c in model.jumps)

    def test_errors(self):
        with pytest.raises(InvalidModelError):
            build_model("nope", 1.0, 1.0, 1.0)
        with pytest.raises(InvalidModelError):
            build_model("multijump", 1.0, 1.0, 1.0, {"p": 1.5})
        with pytest.raises(InvalidModelError):
            build_model("spin", 1.0, -1.0, 1.0)
        with pytest.raises(InvalidModelError):
            build_model("custom", 2, 1.0, 1.0, {"O": np.zeros((2, 3))})

    def test_rescaled_generator_rescales_liouvillian(self):
        from ptlind.liouvillian import assemble

        rng = np.random.default_rng(2)
        o = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        s = 1.7
        m1 = build_model("custom", 3, 1.0, 0.8, {"O": o})
        m2 = build_model("custom", 3, 1.0, 0.8, {"O": s * o})
        l1 = assemble(m1, "dense").data
        l2 = assemble(m2, "dense").data
        assert np.abs(l2 - s * s * l1).max() <= 1e-10 * np.abs(l2).max()

    def test_rescaled_generator_same_observables(self):
        from ptlind.steadystate import compute_observables, solve_steady_state

        rng = np.random.default_rng(3)
        o = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        m1 = build_model("custom", 3, 1.0, 0.8, {"O": o})
        m2 = build_model("custom", 3, 1.0, 0.8, {"O": 2.0 * o})
        o1 = compute_observables(m1, solve_steady_state(m1, "direct").rho)
        o2 = compute_observables(m2, solve_steady_state(m2, "direct").rho)
        assert abs(o1.purity - o2.purity) <= 1e-8
        assert abs(o1.negativity - o2.negativity) <= 1e-8
        assert abs(o1.delta - o2.delta) <= 1e-8


class TestModelFromOperators:
    def test_recovers_generator_from_product_jump(self):
        base = build_model("spin", 1.0, 1.0, 0.5)
        scale = np.sqrt(2.0 * 0.5)
        model = model_from_operators(
            3, base.H, [c / scale for c in base.jumps], 1.0, 0.5
        )
        assert model.O is not None
        assert np.abs(model.O - base.O).max() <= 1e-12

    def test_rejects_non_hermitian_h(self):
        with pytest.raises(InvalidModelError):
            model_from_operators(2, np.diag([1.0, 2j, 0, 0]), [], 1.0, 1.0)
