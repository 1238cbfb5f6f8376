"""Gaussian-process sample paths on S^1/S^2 and Sobolev-norm diagnostics.

A spectrum (mu_l, N_{l,d}) defines a Gaussian process through the truncated
Karhunen-Loeve sum f = sum_l sqrt(mu_l) sum_i xi_{l,i} Y_{l,i} with i.i.d.
standard normal xi.  The expected squared H^r norm of f is
sum_l (1+l)^{2r} mu_l N_{l,d} up to constants; whether that series converges
decides whether paths land in H^r.  At finite truncation the partial sums of
a barely divergent series look convergent, so verdicts are read off the
fitted exponent of the increments instead: increments ~ (1+l)^e with e < -1
means convergent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InconclusiveTail
from .spectrum import Spectrum

INCONCLUSIVE_BAND = (-1.1, -0.9)


def _angles_s1(points: np.ndarray) -> np.ndarray:
    points = np.atleast_2d(np.asarray(points, float))
    return np.arctan2(points[:, 1], points[:, 0])


def _sph_harm(l: int, m: int, theta: np.ndarray, phi: np.ndarray):
    try:
        from scipy.special import sph_harm_y

        return sph_harm_y(l, m, theta, phi)
    except ImportError:  # older scipy
        from scipy.special import sph_harm

        return sph_harm(m, l, phi, theta)


@dataclass(frozen=True)
class SphericalBasis:
    """Real orthonormal spherical-harmonic basis up to degree l_max.

    Orthonormal with respect to the uniform probability measure, so that
    sum_i Y_{l,i}(x) Y_{l,i}(y) = N_{l,d} P_{l,d}(<x, y>).  d=1 uses Fourier
    pairs, d=2 real spherical harmonics.
    """

    d: int
    l_max: int

    def __post_init__(self):
        if self.d not in (1, 2):
            raise ValueError("closed-form real bases are provided for d in {1, 2}")

    def block_sizes(self) -> np.ndarray:
        from .spectrum import multiplicity

        return np.array([multiplicity(l, self.d) for l in range(self.l_max + 1)])

    @property
    def size(self) -> int:
        return int(self.block_sizes().sum())

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Matrix of basis values, shape (size, n_points); points are unit vectors."""
        points = np.atleast_2d(np.asarray(points, float))
        if points.shape[1] != self.d + 1:
            raise ValueError(f"points must have {self.d + 1} coordinates")
        if self.d == 1:
            theta = _angles_s1(points)
            rows = [np.ones_like(theta)]
            for l in range(1, self.l_max + 1):
                rows.append(math.sqrt(2.0) * np.cos(l * theta))
                rows.append(math.sqrt(2.0) * np.sin(l * theta))
            return np.vstack(rows)
        z = np.clip(points[:, 2], -1.0, 1.0)
        theta = np.arccos(z)
        phi = np.arctan2(points[:, 1], points[:, 0])
        rows = []
        sqrt4pi = math.sqrt(4.0 * math.pi)
        for l in range(self.l_max + 1):
            rows.append(sqrt4pi * np.real(_sph_harm(l, 0, theta, phi)))
            for m in range(1, l + 1):
                ylm = _sph_harm(l, m, theta, phi)
                factor = math.sqrt(2.0) * sqrt4pi * (-1.0) ** m
                rows.append(factor * np.real(ylm))
                rows.append(factor * np.imag(ylm))
        return np.vstack(rows)


@dataclass(frozen=True)
class PathSample:
    """One Gaussian-process draw: weighted coefficients over a basis."""

    basis: SphericalBasis
    coefficients: np.ndarray
    seed: int

    def __call__(self, points: np.ndarray) -> np.ndarray:
        values = self.coefficients @ self.basis.evaluate(points)
        return values


def sample_path(spec: Spectrum, basis: SphericalBasis, seed: int) -> PathSample:
    """Draw f = sum_l sqrt(mu_l) sum_i xi_{l,i} Y_{l,i} with a seeded generator.

    Draws come from a counter-based (Philox) stream in canonical (l, i) order,
    so the same seed always yields bitwise-identical coefficients regardless
    of how or where the path is later evaluated.  Eigenvalues below the
    relative zero threshold are treated as exact zeros; otherwise quadrature
    noise of size eps leaks sqrt(eps)-sized coefficients into structurally
    empty degrees and destroys parity.
    """
    if spec.d != basis.d:
        raise ValueError("spectrum and basis dimensions differ")
    if spec.l_max < basis.l_max:
        raise ValueError("basis needs eigenvalues up to its l_max")
    rng = np.random.Generator(np.random.Philox(key=seed))
    xi = rng.standard_normal(basis.size)
    mu = spec.mu[: basis.l_max + 1]
    mu = np.where(mu > 1e-12 * max(float(mu.max()), 0.0), mu, 0.0)
    scale = np.repeat(np.sqrt(mu), basis.block_sizes())
    return PathSample(basis=basis, coefficients=scale * xi, seed=seed)


@dataclass(frozen=True)
class SobolevSeries:
    """Partial sums and verdict for the expected squared H^r norm series."""

    r: float
    partial_sums: np.ndarray
    tail_exponent: float
    verdict: str
    threshold_estimate: float

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "tail_exponent": self.tail_exponent,
            "verdict": self.verdict,
            "threshold_estimate": self.threshold_estimate,
        }


def sobolev_series(spec: Spectrum, r: float, window: Optional[tuple] = None,
                   strict: bool = False) -> SobolevSeries:
    """Convergence diagnostic of sum_l (1+l)^{2r} mu_l N_{l,d}.

    The verdict comes from the fitted exponent of the increments over the
    window: below -1.1 convergent, above -0.9 divergent, in between
    inconclusive (raised as InconclusiveTail when strict).  The threshold
    estimate extrapolates the fitted exponent linearly in r.
    """
    ls = np.arange(spec.l_max + 1)
    increments = (1.0 + ls) ** (2.0 * r) * spec.mu * spec.multiplicities
    partial = np.cumsum(increments)
    lo, hi = window if window is not None else (8, spec.l_max // 2)
    usable = (ls >= lo) & (ls <= hi) & (spec.mu > 1e-12 * float(spec.mu.max()))
    if usable.sum() < 5:
        raise InconclusiveTail(
            f"only {int(usable.sum())} usable increments in window [{lo}, {hi}]"
        )
    exponent = float(np.polyfit(np.log(ls[usable] + 1.0), np.log(increments[usable]), 1)[0])
    if exponent < INCONCLUSIVE_BAND[0]:
        verdict = "convergent"
    elif exponent > INCONCLUSIVE_BAND[1]:
        verdict = "divergent"
    else:
        verdict = "inconclusive"
        if strict:
            raise InconclusiveTail(
                f"fitted tail exponent {exponent:.3f} too close to -1 to call"
            )
    threshold = r - (exponent + 1.0) / 2.0
    return SobolevSeries(
        r=r,
        partial_sums=partial,
        tail_exponent=exponent,
        verdict=verdict,
        threshold_estimate=threshold,
    )


def sobolev_threshold(spec: Spectrum, lo: float = 0.5, hi: float = 4.0,
                      iterations: int = 40, window: Optional[tuple] = None) -> float:
    """Bisect r until the fitted increment exponent crosses -1."""

    def exponent_at(r):
        ls = np.arange(spec.l_max + 1)
        increments = (1.0 + ls) ** (2.0 * r) * spec.mu * spec.multiplicities
        w_lo, w_hi = window if window is not None else (8, spec.l_max // 2)
        usable = (ls >= w_lo) & (ls <= w_hi) & (spec.mu > 1e-12 * float(spec.mu.max()))
        return float(np.polyfit(np.log(ls[usable] + 1.0),
                                np.log(increments[usable]), 1)[0])

    if exponent_at(lo) >= -1.0 or exponent_at(hi) <= -1.0:
        raise InconclusiveTail("threshold does not bracket inside [lo, hi]")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if exponent_at(mid) < -1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
