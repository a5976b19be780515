import numpy as np
import pytest

from ptlind.errors import UnstableRegimeError
from ptlind.hp import delta_from_moments, gaussian_oracle, hp_curves

RATIOS = (1.5, 2.0, 5.0, 10.0)


class TestClosedForms:
    def test_reference_point(self):
        r = hp_curves(1.0, 2.0)
        assert abs(r.sz_deviation - 1.0 / 6.0) <= 1e-14
        assert abs(r.purity - 0.75) <= 1e-14
        assert abs(r.negativity - 0.25) <= 1e-14
        assert abs(r.delta_infinity - 0.75) <= 1e-14

    def test_strong_damping_limits(self):
        r = hp_curves(1.0, 1e6)
        assert abs(r.purity - 1.0) <= 1e-10
        assert r.negativity <= 1e-6
        assert r.sz_deviation <= 1e-10

    def test_negativity_maximum_at_threshold(self):
        # N -> 1/2 as Gamma -> g from above
        r = hp_curves(1.0, 1.0 + 1e-9)
        assert abs(r.negativity - 0.5) <= 1e-8

    @pytest.mark.parametrize("ratio", [1.0, 0.5])
    def test_unstable_regime_rejected(self, ratio):
        with pytest.raises(UnstableRegimeError):
            hp_curves(1.0, ratio)
        with pytest.raises(UnstableRegimeError):
            gaussian_oracle(1.0, ratio)


class TestGaussianOracle:
    @pytest.mark.parametrize("ratio", RATIOS)
    def test_occupation_matches_closed_form(self, ratio):
        mom = gaussian_oracle(1.0, ratio)
        expected = 1.0 / (2.0 * (ratio ** 2 - 1.0))
        assert abs(mom.n_a - expected) <= 1e-10
        assert abs(mom.n_b - expected) <= 1e-10

    @pytest.mark.parametrize("ratio", RATIOS)
    def test_purity_and_negativity_match(self, ratio):
        mom = gaussian_oracle(1.0, ratio)
        curves = hp_curves(1.0, ratio)
        assert abs(mom.purity() - curves.purity) <= 1e-8
        assert abs(mom.negativity() - curves.negativity) <= 1e-8

    @pytest.mark.parametrize("ratio", RATIOS)
    def test_delta_matches(self, ratio):
        mom = gaussian_oracle(1.0, ratio)
        curves = hp_curves(1.0, ratio)
        assert abs(delta_from_moments(mom) - curves.delta_infinity) <= 1e-8

    def test_moments_vanish_at_strong_damping(self):
        mom = gaussian_oracle(1.0, 1e5)
        assert abs(mom.n_a) <= 1e-9
        assert abs(mom.m_ab) <= 1e-4

    def test_anomalous_correlation_imaginary(self):
        mom = gaussian_oracle(1.0, 3.0)
        assert mom.m_ab.real == 0.0
        assert mom.m_ab.imag != 0.0
