import itertools

import numpy as np
import pytest

import neural_kernels as nk
from neural_kernels.kernels import _alpha_sequence


class TestBaseCases:
    def test_depth_one_nngp(self):
        k = nk.build_nngp(nk.make_activation("relu"), nk.NetworkConfig(depth=1))
        ts = np.linspace(-1, 1, 11)
        np.testing.assert_allclose(k.evaluate(ts), 1.0 + ts)
        assert k.trace.alpha == (2.0,)

    def test_depth_one_ntk(self):
        k = nk.build_ntk(nk.make_activation("relu"), nk.NetworkConfig(depth=1))
        np.testing.assert_allclose(k.evaluate(0.3), 1.3)

    def test_relu_two_layer_diagonal(self):
        k = nk.build_nngp(nk.make_activation("relu"), nk.NetworkConfig(depth=2))
        assert k.evaluate(1.0) == pytest.approx(2.0, abs=1e-12)

    def test_linear_network_fixed_point(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_nngp(nk.make_activation("poly:0,1"), cfg, backend="hermite")
        ts = np.linspace(-1, 1, 11)
        np.testing.assert_allclose(k.evaluate(ts), ts, atol=1e-12)

    def test_linear_network_ntk(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_ntk(nk.make_activation("poly:0,1"), cfg, backend="hermite")
        ts = np.linspace(-1, 1, 11)
        np.testing.assert_allclose(k.evaluate(ts), 2.0 * ts, atol=1e-12)

    def test_ntk_depth_one_formula(self):
        # sb2 (1 - si2) + nngp_1 for generic variances
        cfg = nk.NetworkConfig(depth=1, sigma_w2=2.0, sigma_b2=0.5, sigma_i2=0.25)
        k = nk.build_ntk(nk.make_activation("gelu"), cfg)
        t = 0.4
        expected = 0.5 * (1 - 0.25) + (0.5 * 0.25 + 2.0 * t)
        assert k.evaluate(t) == pytest.approx(expected)


class TestAlphaSequence:
    @pytest.mark.parametrize("name", ["relu", "selu", "celu", "gelu", "heaviside",
                                      "tanh", "silu", "rbf", "sk:2", "repu:2"])
    def test_positive_finite(self, name, registry_acts):
        act = registry_acts.get(name) or nk.make_activation(name)
        # quadratically growing activations push alpha past float range around
        # depth 9 (the true values exceed 1e308); stop before that
        depth = 8 if name in ("sk:2", "repu:2") else 10
        sigma_grid = [0.0, 0.5, 1.0, 2.0]
        for sw2, sb2, si2 in itertools.product([0.5, 1.0, 2.0], sigma_grid, sigma_grid):
            cfg = nk.NetworkConfig(depth=depth, sigma_w2=sw2, sigma_b2=sb2, sigma_i2=si2)
            alphas = _alpha_sequence(act, cfg)
            assert all(np.isfinite(a) and a > 0 for a in alphas)

    def test_diagonal_matches_alpha(self):
        act = nk.make_activation("selu")
        cfg = nk.NetworkConfig(depth=4)
        k = nk.build_nngp(act, cfg)
        assert k.evaluate(1.0) == pytest.approx(k.trace.alpha[-1], rel=1e-12)


class TestParityStructure:
    @pytest.mark.parametrize("name", ["selu", "gelu"])
    def test_two_layer_biasfree_decomposition(self, name):
        act = nk.make_activation(name)
        even, odd = nk.even_odd_parts(act)
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        ts = np.linspace(-1, 1, 41)
        for builder in (nk.build_nngp, nk.build_ntk):
            full = builder(act, cfg, backend="hermite").evaluate(ts)
            part_sum = (
                builder(even, cfg, backend="hermite").evaluate(ts)
                + builder(odd, cfg, backend="hermite").evaluate(ts)
            )
            np.testing.assert_allclose(full, part_sum, atol=1e-8)

    def test_odd_activation_gives_odd_kernel(self):
        cfg = nk.NetworkConfig(depth=3, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_nngp(nk.make_activation("tanh"), cfg, backend="hermite")
        ts = np.linspace(-1, 1, 41)
        np.testing.assert_allclose(k.evaluate(-ts), -k.evaluate(ts), atol=1e-9)

    def test_even_activation_gives_even_kernel(self):
        cfg = nk.NetworkConfig(depth=3, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_nngp(nk.make_activation("rbf"), cfg, backend="hermite")
        ts = np.linspace(-1, 1, 41)
        np.testing.assert_allclose(k.evaluate(-ts), k.evaluate(ts), atol=1e-12)


class TestEvaluation:
    def test_domain_error(self):
        k = nk.build_nngp(nk.make_activation("relu"), nk.NetworkConfig(depth=2))
        with pytest.raises(nk.DomainError):
            k.evaluate(1.5)

    def test_maximum_at_one(self):
        k = nk.build_nngp(nk.make_activation("selu"), nk.NetworkConfig(depth=3))
        ts = np.linspace(-1, 1, 101)
        vals = k.evaluate(ts)
        assert np.argmax(vals) == 100

    def test_bias_free_relu_at_zero(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        k = nk.build_nngp(nk.make_activation("relu"), cfg)
        a0 = nk.expand(nk.rescale(nk.make_activation("relu"), 1.0), 4).coeffs[0]
        assert k.evaluate(0.0) == pytest.approx(a0**2, abs=1e-10)

    def test_gram_matrix_positive_semidefinite(self, rng):
        pts = rng.standard_normal((40, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        k = nk.build_nngp(nk.make_activation("relu"), nk.NetworkConfig(depth=3),
                          backend="hermite")
        gram = k.evaluate(np.clip(pts @ pts.T, -1, 1).ravel()).reshape(40, 40)
        eigs = np.linalg.eigvalsh(0.5 * (gram + gram.T))
        assert eigs.min() >= -1e-8 * np.trace(gram)

    def test_ntk_rejects_discontinuous(self):
        with pytest.raises(nk.NotPseudoDifferentiable):
            nk.build_ntk(nk.make_activation("heaviside"), nk.NetworkConfig(depth=2))

    def test_backends_agree_on_kernel(self):
        act = nk.make_activation("selu")
        cfg = nk.NetworkConfig(depth=3)
        ts = np.linspace(-0.95, 0.95, 21)
        kq = nk.build_nngp(act, cfg, backend="quadrature").evaluate(ts)
        kh = nk.build_nngp(act, cfg, backend="hermite").evaluate(ts)
        np.testing.assert_allclose(kq, kh, atol=1e-4)
