import math

import numpy as np
import pytest

import neural_kernels as nk
from neural_kernels import hermite


class TestBasis:
    def test_h0_is_one(self):
        assert nk.hermite_eval(0, 3.7) == 1.0

    def test_h1_is_identity(self):
        assert nk.hermite_eval(1, 2.0) == 2.0

    def test_h2_at_zero(self):
        assert nk.hermite_eval(2, 0.0) == pytest.approx(-1.0 / math.sqrt(2.0), abs=1e-15)

    def test_orthonormality_gram(self):
        rule = hermite.default_rule()
        basis = hermite.hermite_matrix(rule.nodes, 20)
        gram = (basis * rule.weights) @ basis.T
        np.testing.assert_allclose(gram, np.eye(21), atol=1e-10)


class TestRule:
    def test_weights_sum_to_one(self):
        rule = hermite.GaussHermiteRule.build()
        assert abs(rule.weights.sum() - 1.0) < 1e-12

    def test_polynomial_moments(self):
        rule = hermite.GaussHermiteRule.build(400)
        # E[X^2] = 1, E[X^4] = 3 under the standard normal
        assert rule.integrate(rule.nodes**2) == pytest.approx(1.0, abs=1e-13)
        assert rule.integrate(rule.nodes**4) == pytest.approx(3.0, abs=1e-12)


class TestExpand:
    def test_linear(self):
        series = nk.expand(nk.make_activation("poly:0,1"), 8)
        expected = np.zeros(9)
        expected[1] = 1.0
        np.testing.assert_allclose(series.coeffs, expected, atol=1e-14)

    def test_square(self):
        series = nk.expand(nk.make_activation("poly:0,0,1"), 8)
        expected = np.zeros(9)
        expected[0] = 1.0
        expected[2] = math.sqrt(2.0)
        np.testing.assert_allclose(series.coeffs, expected, atol=1e-13)

    def test_relu_leading_coefficient(self):
        series = nk.expand(nk.make_activation("relu"), 8)
        assert series.coeffs[0] == pytest.approx(1.0 / math.sqrt(2 * math.pi), abs=1e-12)
        assert series.coeffs[1] == pytest.approx(0.5, abs=1e-12)

    def test_parity_zeroes(self):
        even, odd = nk.even_odd_parts(nk.make_activation("relu"))
        se = nk.expand(even, 64).coeffs
        so = nk.expand(odd, 64).coeffs
        np.testing.assert_allclose(se[1::2], 0.0, atol=1e-14)
        np.testing.assert_allclose(so[0::2], 0.0, atol=1e-14)

    def test_truncation_warning(self):
        with pytest.warns(nk.TruncationWarning):
            nk.expand(nk.make_activation("heaviside"), 64)

    @pytest.mark.parametrize("name", ["tanh", "gelu", "silu", "rbf", "sigmoid", "sin"])
    def test_parseval_smooth(self, name, registry_acts):
        act = registry_acts[name]
        series = nk.expand(act, 512)
        total = nk.dual_at_boundary(act, +1)
        assert series.norm_sq() == pytest.approx(total, abs=1e-6)

    @pytest.mark.parametrize("name", ["relu", "selu", "heaviside", "sk:0"])
    def test_parseval_bessel_monotone(self, name, registry_acts):
        # kinked activations converge slowly; the deficit must shrink with N
        # and never go negative
        act = registry_acts[name]
        total = nk.dual_at_boundary(act, +1)
        deficits = []
        for n in (64, 256, 1024):
            deficit = total - nk.expand(act, n).norm_sq()
            assert deficit > -1e-12
            deficits.append(deficit)
        assert deficits[0] > deficits[1] > deficits[2]


class TestReferenceCoefficients:
    def test_a0_s1(self):
        assert nk.s_k_coefficient(1, 0) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-15)

    def test_a1_s0(self):
        assert nk.s_k_coefficient(0, 1) == pytest.approx(1 / math.sqrt(2 * math.pi), abs=1e-15)

    def test_even_offsets_vanish(self):
        for k in range(5):
            for n in range(k % 2, 80, 2):
                assert nk.s_k_coefficient(k, n) == 0.0

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_matches_quadrature(self, k):
        series = nk.expand(nk.reference_activation(k), 60)
        exact = nk.s_k_coefficients(k, 60).coeffs
        mask = np.abs(exact) > 1e-12
        np.testing.assert_allclose(series.coeffs[mask], exact[mask], rtol=1e-8)
        np.testing.assert_allclose(series.coeffs[~mask], 0.0, atol=1e-12)

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_theta_decay(self, k):
        # |a_n(s_k)| stays within constant factors of (n+1)^(-3/4-k/2)
        ns = np.array([n for n in range(k + 1, 401) if (n - k) % 2 == 1])
        vals = np.abs([nk.s_k_coefficient(k, int(n)) for n in ns])
        ratio = vals * (ns + 1.0) ** (0.75 + 0.5 * k)
        assert ratio.min() > 0.3
        assert ratio.max() < 6.0


class TestShiftRule:
    def test_s0_shifts_to_s1(self):
        shifted = nk.shift_by_pseudo_derivative(nk.s_k_coefficients(0, 120))
        exact = nk.s_k_coefficients(1, 121)
        np.testing.assert_allclose(shifted.coeffs[1:], exact.coeffs[1:121 + 1], rtol=1e-12)

    def test_constant_integrates_to_identity(self):
        const = nk.HermiteSeries(coeffs=np.array([1.0]), source="one")
        shifted = nk.shift_by_pseudo_derivative(const)
        np.testing.assert_allclose(shifted.coeffs, [0.0, 1.0])


def test_double_factorial_convention():
    assert nk.double_factorial(-3) == 1
    assert nk.double_factorial(0) == 1
    assert nk.double_factorial(5) == 15
    assert nk.double_factorial(6) == 48
    for n in range(1, 60):
        assert hermite.log_double_factorial(n) == pytest.approx(
            math.log(nk.double_factorial(n)), rel=1e-12
        )
