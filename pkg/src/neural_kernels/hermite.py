"""Normalized probabilist's Hermite basis and Gaussian-measure expansions.

``h_n`` denotes the n-th normalized probabilist's Hermite polynomial, so that
(h_n) is an orthonormal basis of L2(N(0,1)).  Coefficients of an activation f
in this basis are ``a_n(f) = <f, h_n>_{L2(N(0,1))}``.

Coefficient integrals are computed with a rule that splits the real line at
zero and maps each half line to a truncated Gauss-Legendre grid (the Gaussian
tail beyond the cut is negligible); a plain Gauss-Hermite rule converges
slowly across a kink at the origin, the split rule does not care about it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .activations import ActivationSpec, evaluate
from .errors import TruncationWarning

DEFAULT_N_COEFFS = 512
DEFAULT_NODES_PER_HALF_LINE = 2000
# the density tail beyond 12 sigma is ~1e-32, but high-degree Hermite products
# carry x^(i+j) growth that pushes meaningful mass out to ~14 sigma; 16 keeps
# the h_0..h_20 Gram identity below 1e-12
DEFAULT_CUT_SIGMAS = 16.0


def hermite_eval(n: int, x):
    """h_n(x) via the stable three-term recurrence with normalization folded in."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return hermite_matrix(x, n)[n]


def hermite_matrix(x, n_max: int):
    """Stack h_0..h_{n_max} evaluated at x; shape (n_max+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros((n_max + 1, x.size))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = x
    for n in range(1, n_max):
        out[n + 1] = (x * out[n] - math.sqrt(n) * out[n - 1]) / math.sqrt(n + 1)
    return out


@dataclass(frozen=True)
class GaussHermiteRule:
    """Quadrature nodes/weights for integrals against the standard normal.

    Built as two half-line Gauss-Legendre maps on [0, cut] standard
    deviations, mirrored around zero, with the normal density folded into the
    weights.  Weights sum to one up to the far-tail mass (< 1e-31).
    """

    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, nodes_per_half_line: int = DEFAULT_NODES_PER_HALF_LINE,
              cut: float = DEFAULT_CUT_SIGMAS) -> "GaussHermiteRule":
        x, w = roots_legendre(nodes_per_half_line)
        xp = 0.5 * cut * (x + 1.0)
        wp = 0.5 * cut * w * np.exp(-0.5 * xp**2) / math.sqrt(2.0 * math.pi)
        nodes = np.concatenate([-xp[::-1], xp])
        weights = np.concatenate([wp[::-1], wp])
        return cls(nodes=nodes, weights=weights)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))

    @property
    def node_count(self) -> int:
        return self.nodes.size


_DEFAULT_RULE = None


def default_rule() -> GaussHermiteRule:
    global _DEFAULT_RULE
    if _DEFAULT_RULE is None:
        _DEFAULT_RULE = GaussHermiteRule.build()
    return _DEFAULT_RULE


@dataclass(frozen=True)
class HermiteSeries:
    """Truncated coefficient vector (a_0..a_N) of a function in the h_n basis."""

    coeffs: np.ndarray
    source: str = ""

    @property
    def truncation(self) -> int:
        return self.coeffs.size - 1

    def norm_sq(self) -> float:
        return float(np.dot(self.coeffs, self.coeffs))


def expand(act: ActivationSpec, n_coeffs: int = DEFAULT_N_COEFFS,
           rule: GaussHermiteRule | None = None) -> HermiteSeries:
    """Hermite coefficients a_0..a_N of an activation by split quadrature.

    Warns (TruncationWarning) when the trailing coefficients still carry more
    than 1e-6 of the series norm, i.e. the truncation is visibly lossy.  The
    last two entries are checked because single-parity activations have
    every other coefficient exactly zero.
    """
    if n_coeffs < 0:
        raise ValueError("n_coeffs must be >= 0")
    rule = rule or default_rule()
    values = evaluate(act, rule.nodes)
    basis = hermite_matrix(rule.nodes, n_coeffs)
    coeffs = basis @ (rule.weights * values)
    norm = math.sqrt(float(np.dot(coeffs, coeffs)))
    trailing = float(np.max(np.abs(coeffs[-2:])))
    if norm > 0 and trailing > 1e-6 * norm:
        warnings.warn(
            f"expansion of {act.name!r} truncated at N={n_coeffs} with "
            f"trailing |a_n|/||a|| = {trailing / norm:.2e}",
            TruncationWarning,
            stacklevel=2,
        )
    return HermiteSeries(coeffs=coeffs, source=act.name)


def double_factorial(n: int) -> int:
    """n!! with the convention n!! = 1 for n <= 0 (needed by s_k coefficients)."""
    if n <= 0:
        return 1
    result = 1
    while n > 0:
        result *= n
        n -= 2
    return result


def log_double_factorial(n: int) -> float:
    """log(n!!), in closed form via log-gamma to stay finite for large n."""
    if n <= 0:
        return 0.0
    if n % 2 == 0:
        k = n // 2
        return k * math.log(2.0) + math.lgamma(k + 1)
    k = (n + 1) // 2
    return math.lgamma(n + 1) - (k - 1) * math.log(2.0) - math.lgamma(k)


def s_k_coefficient(k: int, n: int) -> float:
    """Exact a_n(s_k) for the reference activation s_k = sgn(x) x^k / (2 k!).

    Zero for even n-k; otherwise a signed ratio of double factorials over
    sqrt(2 pi n!), evaluated in log space so large n does not overflow.
    """
    if k < 0 or n < 0:
        raise ValueError("k and n must be >= 0")
    if (n - k) % 2 == 0:
        return 0.0
    sign = (-1.0) ** ((max(1, n - k) - 1) // 2)
    log_num = log_double_factorial(n - k - 2)
    log_den = log_double_factorial(k - n) + 0.5 * (
        math.log(2.0 * math.pi) + math.lgamma(n + 1)
    )
    return sign * math.exp(log_num - log_den)


def s_k_coefficients(k: int, n_coeffs: int = DEFAULT_N_COEFFS) -> HermiteSeries:
    """Exact Hermite series of the reference activation s_k."""
    coeffs = np.array([s_k_coefficient(k, n) for n in range(n_coeffs + 1)])
    return HermiteSeries(coeffs=coeffs, source=f"sk:{k}")


def shift_by_pseudo_derivative(series_of_g: HermiteSeries) -> HermiteSeries:
    """Coefficients of f from those of its pseudo-derivative g.

    If g is a pseudo-derivative of f then a_n(f) = n^{-1/2} a_{n-1}(g) for
    n >= 1.  The a_0 slot depends on f(0) and is left at zero for the caller.
    """
    g = series_of_g.coeffs
    out = np.zeros(g.size + 1)
    n = np.arange(1, g.size + 1, dtype=float)
    out[1:] = g / np.sqrt(n)
    return HermiteSeries(coeffs=out, source=f"antiderivative({series_of_g.source})")
