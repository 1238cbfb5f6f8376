import math

import numpy as np
import pytest

import neural_kernels as nk
from neural_kernels.spectrum import gegenbauer_matrix, sphere_rule


class TestGegenbauer:
    def test_degree_one_is_identity(self):
        for d in (1, 2, 3, 7):
            assert nk.gegenbauer_p(1, d, 0.37) == pytest.approx(0.37)

    def test_normalized_at_one(self):
        for d in (1, 2, 5):
            for l in (0, 3, 10, 25):
                assert nk.gegenbauer_p(l, d, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_legendre_p2(self):
        assert nk.gegenbauer_p(2, 2, 0.0) == pytest.approx(-0.5)

    def test_circle_reduces_to_chebyshev(self):
        ts = np.linspace(-1, 1, 41)
        for l in (0, 1, 5, 12):
            np.testing.assert_allclose(
                nk.gegenbauer_p(l, 1, ts), np.cos(l * np.arccos(ts)), atol=1e-12
            )

    @pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
    def test_orthogonality(self, d):
        t, w = sphere_rule(400, d)
        P = gegenbauer_matrix(t, 30, d)
        gram = (P * w) @ P.T
        expected = np.diag([1.0 / nk.multiplicity(l, d) for l in range(31)])
        np.testing.assert_allclose(gram, expected, atol=1e-9)


class TestMultiplicity:
    def test_circle(self):
        assert nk.multiplicity(0, 1) == 1
        for l in (1, 2, 9):
            assert nk.multiplicity(l, 1) == 2

    def test_two_sphere(self):
        for l in range(8):
            assert nk.multiplicity(l, 2) == 2 * l + 1

    def test_constants(self):
        for d in (1, 2, 3, 9):
            assert nk.multiplicity(0, d) == 1

    def test_growth_order(self):
        # N_{l,d} grows like (l+1)^{d-1}
        for d in (2, 3, 4):
            ratio = [nk.multiplicity(l, d) / (l + 1.0) ** (d - 1) for l in range(4, 60)]
            assert max(ratio) / min(ratio) < 3.0


def _linear_kernel():
    cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
    return nk.build_nngp(nk.make_activation("poly:0,1"), cfg, backend="hermite")


def _square_kernel():
    # bias-free two-layer network with x^2: kappa(t) = 1 + 2 t^2
    cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
    return nk.build_nngp(nk.make_activation("poly:0,0,1"), cfg, backend="hermite")


class TestEigenvalues:
    def test_linear_kernel(self):
        spec = nk.eigenvalues(_linear_kernel(), d=2, l_max=32, n_quad=200)
        assert spec.mu[1] == pytest.approx(1.0 / 3.0, abs=1e-12)
        others = np.delete(spec.mu, 1)
        assert np.max(np.abs(others)) < 1e-12

    def test_constant_kernel(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_nngp(nk.make_activation("poly:1"), cfg, backend="hermite")
        spec = nk.eigenvalues(k, d=3, l_max=16, n_quad=64)
        assert spec.mu[0] == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(spec.mu[1:])) < 1e-12

    def test_square_kernel_support(self):
        spec = nk.eigenvalues(_square_kernel(), d=2, l_max=32, n_quad=200)
        # exact values by direct integration of (1 + 2 t^2) P_l on [-1, 1]/2
        assert spec.mu[0] == pytest.approx(5.0 / 3.0, abs=1e-12)
        assert spec.mu[2] == pytest.approx(4.0 / 15.0, abs=1e-12)
        others = np.delete(spec.mu, [0, 2])
        assert np.max(np.abs(others)) < 1e-12

    def test_mercer_reconstruction(self):
        k = _square_kernel()
        spec = nk.eigenvalues(k, d=2, l_max=32, n_quad=200)
        ts = np.linspace(-0.9, 0.9, 50)
        np.testing.assert_allclose(spec.mercer_eval(ts), k.evaluate(ts), atol=1e-12)

    def test_under_resolved_raises(self):
        k = nk.build_nngp(nk.make_activation("heaviside"), nk.NetworkConfig(depth=2))
        with pytest.raises(nk.QuadratureUnderResolved):
            nk.eigenvalues(k, d=2, l_max=4, n_quad=8)

    def test_requires_enough_nodes(self):
        with pytest.raises(ValueError):
            nk.eigenvalues(_linear_kernel(), d=2, l_max=64, n_quad=64)

    def test_no_significant_negatives(self):
        k = nk.build_nngp(nk.make_activation("relu"), nk.NetworkConfig(depth=2))
        spec = nk.eigenvalues(k, d=2)
        assert spec.mu.min() >= -1e-9 * spec.mu[0]


class TestFitDecay:
    def _synthetic(self, exponent, l_max=128, d=2):
        ls = np.arange(l_max + 1)
        mu = (ls + 1.0) ** exponent
        mult = np.array([nk.multiplicity(l, d) for l in range(l_max + 1)], float)
        return nk.Spectrum(d=d, mu=mu, multiplicities=mult, n_quad=0, source="synthetic")

    def test_exact_power_law(self):
        fit = nk.fit_decay(self._synthetic(-3.0), parity="all", window=(8, 64))
        assert fit.slope == pytest.approx(-3.0, abs=1e-6)
        assert fit.zero_set == ()

    def test_parity_subsequences(self):
        spec = self._synthetic(-2.0)
        even = nk.fit_decay(spec, parity="even", window=(8, 64))
        odd = nk.fit_decay(spec, parity="odd", window=(8, 64))
        assert even.slope == pytest.approx(-2.0, abs=1e-6)
        assert odd.slope == pytest.approx(-2.0, abs=1e-6)
        assert all(l % 2 == 0 for l in range(8, 65) if l in even.zero_set)

    def test_zero_set_detection(self):
        spec = self._synthetic(-3.0)
        mu = spec.mu.copy()
        mu[21::2] = 0.0
        spec = nk.Spectrum(d=2, mu=mu, multiplicities=spec.multiplicities, n_quad=0)
        fit = nk.fit_decay(spec, parity="odd", window=(1, 64))
        assert set(fit.zero_set) == set(range(21, 65, 2))

    def test_insufficient_data(self):
        spec = self._synthetic(-3.0)
        with pytest.raises(nk.InsufficientData):
            nk.fit_decay(spec, parity="odd", window=(8, 12))

    def test_relu_ntk_odd_zeros(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_ntk(nk.make_activation("relu"), cfg)
        spec = nk.eigenvalues(k, d=2, l_max=64, n_quad=256)
        with pytest.raises(nk.InsufficientData) as info:
            nk.fit_decay(spec, parity="odd", window=(3, 64))
        assert "odd" in str(info.value)


class TestPredictExponent:
    def test_relu_deep_ntk(self):
        pred = nk.predict_exponent(
            nk.make_activation("relu"), nk.NetworkConfig(depth=3), "ntk", "even", d=2
        )
        assert pred.exponent == -3.0
        assert pred.case == "finite-smoothness"

    def test_relu_deep_nngp(self):
        pred = nk.predict_exponent(
            nk.make_activation("relu"), nk.NetworkConfig(depth=3), "nngp", "odd", d=2
        )
        assert pred.exponent == -5.0

    def test_selu_biasfree_two_layer_odd(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        pred = nk.predict_exponent(nk.make_activation("selu"), cfg, "ntk", "odd", d=2)
        assert pred.exponent == -5.0

    def test_selu_biasfree_two_layer_even(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        pred = nk.predict_exponent(nk.make_activation("selu"), cfg, "ntk", "even", d=2)
        assert pred.exponent == -3.0

    def test_square_polynomial_caps(self):
        act = nk.make_activation("poly:0,0,1")
        for depth, cap in ((2, 2), (3, 4)):
            pred = nk.predict_exponent(act, nk.NetworkConfig(depth=depth), "nngp", "even", d=2)
            assert pred.finite_rank
            assert pred.max_degree == cap
            pred_odd = nk.predict_exponent(act, nk.NetworkConfig(depth=depth), "nngp", "odd", d=2)
            assert pred_odd.max_degree == cap - 1

    def test_relu_biasfree_two_layer_odd_is_linear(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        pred = nk.predict_exponent(nk.make_activation("relu"), cfg, "ntk", "odd", d=2)
        assert pred.finite_rank
        assert pred.max_degree == 1

    def test_heaviside_nngp_discontinuous(self):
        for depth, expo in ((2, -3.0), (3, -2.5)):
            pred = nk.predict_exponent(
                nk.make_activation("heaviside"), nk.NetworkConfig(depth=depth),
                "nngp", "even", d=2,
            )
            assert pred.case == "discontinuous"
            assert pred.exponent == expo

    def test_heaviside_ntk_undefined(self):
        with pytest.raises(nk.NTKUndefined):
            nk.predict_exponent(
                nk.make_activation("heaviside"), nk.NetworkConfig(depth=2), "ntk", "even", d=2
            )

    def test_tanh_biasfree_parities(self):
        cfg = nk.NetworkConfig(depth=3, sigma_b2=0.0, sigma_i2=0.0)
        act = nk.make_activation("tanh")
        odd = nk.predict_exponent(act, cfg, "nngp", "odd", d=2)
        assert odd.superpolynomial
        even = nk.predict_exponent(act, cfg, "nngp", "even", d=2)
        assert even.case == "zero-function"
        assert even.max_degree == -math.inf

    def test_gelu_with_bias_superpolynomial(self):
        pred = nk.predict_exponent(
            nk.make_activation("gelu"), nk.NetworkConfig(depth=3), "nngp", "all", d=2
        )
        assert pred.superpolynomial

    def test_parity_all_merges(self):
        pred = nk.predict_exponent(
            nk.make_activation("relu"), nk.NetworkConfig(depth=3), "ntk", "all", d=2
        )
        assert pred.parity == "all"
        assert pred.exponent == -3.0
