import numpy as np
import pytest

import neural_kernels as nk
from neural_kernels.gp_paths import SphericalBasis


def _circle_points(n):
    theta = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    return np.stack([np.cos(theta), np.sin(theta)], axis=1)


def _synthetic_spectrum(mu, d):
    mult = np.array([nk.multiplicity(l, d) for l in range(len(mu))], float)
    return nk.Spectrum(d=d, mu=np.asarray(mu, float), multiplicities=mult, n_quad=0)


class TestBasis:
    def test_circle_gram_identity(self):
        basis = SphericalBasis(d=1, l_max=12)
        pts = _circle_points(256)
        B = basis.evaluate(pts)
        gram = B @ B.T / pts.shape[0]
        np.testing.assert_allclose(gram, np.eye(basis.size), atol=1e-12)

    def test_sphere_gram_identity(self):
        basis = SphericalBasis(d=2, l_max=8)
        nz, mphi = 24, 48
        z, wz = np.polynomial.legendre.leggauss(nz)
        phi = np.linspace(0.0, 2 * np.pi, mphi, endpoint=False)
        zz, pp = np.meshgrid(z, phi, indexing="ij")
        s = np.sqrt(1 - zz**2)
        pts = np.stack([(s * np.cos(pp)).ravel(), (s * np.sin(pp)).ravel(), zz.ravel()], axis=1)
        weights = np.repeat(wz / 2.0, mphi) / mphi
        B = basis.evaluate(pts)
        gram = (B * weights) @ B.T
        np.testing.assert_allclose(gram, np.eye(basis.size), atol=1e-6)

    def test_addition_identity(self):
        # sum_i Y_{l,i}(x) Y_{l,i}(y) = N_{l,d} P_{l,d}(<x,y>)
        basis = SphericalBasis(d=2, l_max=6)
        rng = np.random.default_rng(3)
        pts = rng.standard_normal((2, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        B = basis.evaluate(pts)
        sizes = basis.block_sizes()
        start = 0
        t = float(pts[0] @ pts[1])
        for l, size in enumerate(sizes):
            block = B[start : start + size]
            value = float(block[:, 0] @ block[:, 1])
            assert value == pytest.approx(nk.multiplicity(l, 2) * nk.gegenbauer_p(l, 2, t),
                                          abs=1e-10)
            start += size

    def test_rejects_unsupported_dimension(self):
        with pytest.raises(ValueError):
            SphericalBasis(d=3, l_max=4)


class TestSamplePath:
    def test_rank_one_constant(self):
        spec = _synthetic_spectrum([1.0, 0.0, 0.0], d=1)
        basis = SphericalBasis(d=1, l_max=2)
        path = nk.sample_path(spec, basis, seed=5)
        values = path(_circle_points(16))
        np.testing.assert_allclose(values, values[0])
        assert values[0] == pytest.approx(path.coefficients[0])

    def test_deterministic_given_seed(self):
        spec = _synthetic_spectrum((np.arange(33) + 1.0) ** -3.0, d=1)
        basis = SphericalBasis(d=1, l_max=32)
        a = nk.sample_path(spec, basis, seed=11)
        b = nk.sample_path(spec, basis, seed=11)
        assert np.array_equal(a.coefficients, b.coefficients)
        c = nk.sample_path(spec, basis, seed=12)
        assert not np.array_equal(a.coefficients, c.coefficients)

    def test_empirical_covariance(self):
        spec = _synthetic_spectrum((np.arange(17) + 1.0) ** -3.0, d=1)
        basis = SphericalBasis(d=1, l_max=16)
        x = np.array([[1.0, 0.0], [np.cos(1.1), np.sin(1.1)]])
        samples = np.array([nk.sample_path(spec, basis, seed=s)(x) for s in range(4000)])
        prod = samples[:, 0] * samples[:, 1]
        se = prod.std(ddof=1) / np.sqrt(len(prod))
        t = float(x[0] @ x[1])
        truncated = float(spec.mercer_eval(t)[0])
        assert abs(prod.mean() - truncated) < 4 * se

    def test_odd_spectrum_gives_odd_paths(self):
        cfg = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
        kernel = nk.build_nngp(nk.make_activation("tanh"), cfg, backend="hermite")
        spec = nk.eigenvalues(kernel, d=1, l_max=64, n_quad=256)
        basis = SphericalBasis(d=1, l_max=64)
        path = nk.sample_path(spec, basis, seed=7)
        pts = _circle_points(32)
        np.testing.assert_allclose(path(-pts), -path(pts), atol=1e-9)

    def test_dimension_mismatch(self):
        spec = _synthetic_spectrum([1.0, 0.1], d=2)
        with pytest.raises(ValueError):
            nk.sample_path(spec, SphericalBasis(d=1, l_max=1), seed=0)


class TestSobolevSeries:
    def test_p_series_convergent(self):
        spec = _synthetic_spectrum((np.arange(129) + 1.0) ** -4.0, d=1)
        series = nk.sobolev_series(spec, r=1.0)
        assert series.verdict == "convergent"
        assert series.tail_exponent == pytest.approx(-2.0, abs=1e-6)
        assert np.all(np.diff(series.partial_sums) >= 0.0)

    def test_divergent(self):
        spec = _synthetic_spectrum((np.arange(129) + 1.0) ** -4.0, d=1)
        assert nk.sobolev_series(spec, r=2.0).verdict == "divergent"

    def test_inconclusive_band(self):
        spec = _synthetic_spectrum((np.arange(129) + 1.0) ** -4.0, d=1)
        series = nk.sobolev_series(spec, r=1.5)
        assert series.verdict == "inconclusive"
        with pytest.raises(nk.InconclusiveTail):
            nk.sobolev_series(spec, r=1.5, strict=True)

    def test_threshold_estimate_exact_power_law(self):
        spec = _synthetic_spectrum((np.arange(129) + 1.0) ** -4.0, d=1)
        series = nk.sobolev_series(spec, r=1.0)
        assert series.threshold_estimate == pytest.approx(1.5, abs=1e-6)

    def test_bisection(self):
        spec = _synthetic_spectrum((np.arange(257) + 1.0) ** -4.0, d=1)
        assert nk.sobolev_threshold(spec) == pytest.approx(1.5, abs=1e-6)

    def test_bracket_error(self):
        spec = _synthetic_spectrum((np.arange(129) + 1.0) ** -4.0, d=1)
        with pytest.raises(nk.InconclusiveTail):
            nk.sobolev_threshold(spec, lo=2.0, hi=4.0)
