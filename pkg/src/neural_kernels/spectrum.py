"""Eigenvalue spectra of dot-product kernels on the sphere S^d.

A dot-product kernel kappa(<x, y>) diagonalizes in spherical harmonics; the
degree-l eigenvalue reduces to a 1-D weighted integral of kappa against the
Gegenbauer polynomial P_{l,d} (normalized to P_{l,d}(1) = 1) with weight
proportional to (1 - t^2)^{d/2 - 1}.  The measure here is the probability
measure, under which

    mu_l = integral kappa(t) P_{l,d}(t) w_d(t) dt,
    kappa(t) = sum_l mu_l N_{l,d} P_{l,d}(t),

with N_{l,d} the dimension of degree-l spherical harmonics.  This rescales
every mu_l by one global constant relative to the surface-measure convention
and leaves decay exponents and zero sets unchanged.

The module also hosts the log-log decay fit and the prediction engine that
maps (activation, network config, kernel kind, parity) to the expected decay
exponent, superpolynomial decay, or a finite-rank degree cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np
from scipy.special import roots_jacobi

from .activations import ActivationSpec, classify, even_odd_parts
from .errors import InsufficientData, NTKUndefined, QuadratureUnderResolved
from .hermite import expand
from .kernels import KernelFunction, NetworkConfig

DEFAULT_L_MAX = 256
DEFAULT_N_QUAD = 1000
ZERO_THRESHOLD_REL = 1e-12
MIN_FIT_POINTS = 5
PREASYMPTOTIC_L = 8


def gegenbauer_p(l: int, d: int, t):
    """P_{l,d}(t) with P_{l,d}(1) = 1; reduces to cos(l arccos t) for d = 1."""
    if l < 0 or d < 1:
        raise ValueError("need l >= 0 and d >= 1")
    vals = gegenbauer_matrix(np.atleast_1d(np.asarray(t, float)), l, d)[l]
    return float(vals[0]) if np.ndim(t) == 0 else vals


def gegenbauer_matrix(ts: np.ndarray, l_max: int, d: int) -> np.ndarray:
    """Rows P_{0,d}..P_{l_max,d} at ts via the three-term recurrence."""
    ts = np.asarray(ts, float)
    out = np.zeros((l_max + 1, ts.size))
    out[0] = 1.0
    if l_max >= 1:
        out[1] = ts
    for l in range(1, l_max):
        out[l + 1] = ((2 * l + d - 1) * ts * out[l] - l * out[l - 1]) / (l + d - 1)
    return out


def multiplicity(l: int, d: int) -> int:
    """Dimension N_{l,d} of the degree-l spherical harmonics on S^d."""
    if l < 0 or d < 1:
        raise ValueError("need l >= 0 and d >= 1")
    if l == 0:
        return 1
    return (2 * l + d - 1) * comb(l + d - 1, l) // (l + d - 1)


def sphere_rule(n_quad: int, d: int):
    """Gauss-Jacobi nodes/weights for the probability weight on [-1, 1]."""
    a = d / 2.0 - 1.0
    t, w = roots_jacobi(n_quad, a, a)
    return t, w / w.sum()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues mu_0..mu_{l_max} with multiplicities, for one kernel on S^d."""

    d: int
    mu: np.ndarray
    multiplicities: np.ndarray
    n_quad: int
    source: str = ""

    @property
    def l_max(self) -> int:
        return self.mu.size - 1

    def mercer_eval(self, ts):
        """Truncated Mercer sum sum_l mu_l N_{l,d} P_{l,d}(t)."""
        ts = np.atleast_1d(np.asarray(ts, float))
        P = gegenbauer_matrix(ts, self.l_max, self.d)
        return (self.mu * self.multiplicities) @ P


def eigenvalues(kernel: KernelFunction, d: int, l_max: int = DEFAULT_L_MAX,
                n_quad: int = DEFAULT_N_QUAD, check: bool = True,
                source: str = "") -> Spectrum:
    """Spectrum of a kernel by Gauss-Jacobi quadrature against P_{l,d}.

    The Mercer reconstruction check compares the truncated eigenvalue sum to
    the kernel itself on an interior grid and raises QuadratureUnderResolved
    when the residual exceeds 1e-5 of the diagonal value.
    """
    if n_quad < 2 * l_max:
        raise ValueError("need n_quad >= 2 * l_max to resolve degree l_max")
    t, w = sphere_rule(n_quad, d)
    values = kernel.evaluate(t)
    P = gegenbauer_matrix(t, l_max, d)
    mu = P @ (w * values)
    mult = np.array([multiplicity(l, d) for l in range(l_max + 1)], dtype=float)
    spec = Spectrum(d=d, mu=mu, multiplicities=mult, n_quad=n_quad,
                    source=source or f"{kernel.kind}")
    if check:
        probe = np.linspace(-0.9, 0.9, 50)
        resid = float(np.max(np.abs(spec.mercer_eval(probe) - kernel.evaluate(probe))))
        scale = abs(kernel.value_at_one)
        if resid > 1e-5 * scale:
            raise QuadratureUnderResolved(
                f"Mercer reconstruction residual {resid:.3e} exceeds 1e-5 * kappa(1) = "
                f"{1e-5 * scale:.3e}; raise n_quad or l_max"
            )
    return spec


@dataclass(frozen=True)
class DecayFit:
    """Least-squares power-law fit of mu_l over one parity subsequence."""

    parity: str
    window: tuple
    slope: float
    intercept: float
    max_residual: float
    zero_set: tuple
    n_points: int

    def to_dict(self) -> dict:
        return {
            "parity": self.parity,
            "window": list(self.window),
            "slope": self.slope,
            "intercept": self.intercept,
            "max_residual": self.max_residual,
            "zero_set": list(self.zero_set),
            "n_points": self.n_points,
        }


def fit_decay(spec: Spectrum, parity: str = "all",
              window: Optional[tuple] = None) -> DecayFit:
    """Fit log mu_l ~ slope * log(l+1) + intercept on one parity subsequence.

    Only eigenvalues above the relative zero threshold (1e-12 of the parity
    maximum) enter the fit; indices below it inside the window are reported
    as the zero set.  The default window starts past the pre-asymptotic head.
    """
    if parity not in ("even", "odd", "all"):
        raise ValueError("parity must be 'even', 'odd', or 'all'")
    lo, hi = window if window is not None else (PREASYMPTOTIC_L, spec.l_max // 2)
    if lo > hi:
        raise ValueError("empty window")
    ls = np.arange(spec.l_max + 1)
    in_parity = np.ones_like(ls, dtype=bool)
    if parity == "even":
        in_parity = ls % 2 == 0
    elif parity == "odd":
        in_parity = ls % 2 == 1
    parity_max = float(spec.mu[in_parity].max()) if in_parity.any() else 0.0
    threshold = ZERO_THRESHOLD_REL * parity_max
    in_window = (ls >= lo) & (ls <= hi) & in_parity
    usable = in_window & (spec.mu > threshold)
    zero_set = tuple(int(l) for l in ls[in_window & ~usable])
    if usable.sum() < MIN_FIT_POINTS:
        raise InsufficientData(
            f"only {int(usable.sum())} {parity} eigenvalues above threshold in "
            f"window [{lo}, {hi}]; need {MIN_FIT_POINTS}"
        )
    x = np.log(ls[usable] + 1.0)
    y = np.log(spec.mu[usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.max(np.abs(slope * x + intercept - y)))
    return DecayFit(
        parity=parity,
        window=(int(lo), int(hi)),
        slope=float(slope),
        intercept=float(intercept),
        max_residual=resid,
        zero_set=zero_set,
        n_points=int(usable.sum()),
    )


@dataclass(frozen=True)
class ExponentPrediction:
    """Predicted spectral structure for one kernel kind and parity."""

    kind: str
    parity: str
    case: str
    exponent: Optional[float] = None
    superpolynomial: bool = False
    finite_rank: bool = False
    max_degree: Optional[float] = None

    def to_dict(self) -> dict:
        def enc(v):
            if v == -math.inf:
                return "-inf"
            return v

        return {
            "kind": self.kind,
            "parity": self.parity,
            "case": self.case,
            "exponent": self.exponent,
            "superpolynomial": self.superpolynomial,
            "finite_rank": self.finite_rank,
            "max_degree": enc(self.max_degree),
        }


def _hermite_parity_degrees(act: ActivationSpec):
    """(even, odd) maximal Hermite-basis degrees of a polynomial activation."""
    coeffs = act.params.get("coeffs")
    if coeffs is not None:
        herme = np.polynomial.hermite_e.poly2herme(list(coeffs))
        nz = np.nonzero(np.abs(herme) > 1e-12 * max(1.0, np.max(np.abs(herme))))[0]
    else:
        degree = int(act.polynomial_degree)
        series = expand(act, degree + 4)
        a = np.abs(series.coeffs)
        nz = np.nonzero(a > 1e-9 * max(1.0, a.max()))[0]
    even = max((int(n) for n in nz if n % 2 == 0), default=-math.inf)
    odd = max((int(n) for n in nz if n % 2 == 1), default=-math.inf)
    return even, odd


def _polynomial_rank_caps(h_even, h_odd, depth: int, sigma2: float):
    """(N_even, N_odd): largest even/odd degrees with nonzero eigenvalues.

    Composing the dual power series through the depth caps the total degree
    at max(h)^(L-1); the opposite-parity cap depends on whether the constant
    kernel offset (sigma2) reintroduces both parities at each layer.
    """
    L = depth
    if h_even == -math.inf and h_odd == -math.inf:
        raise ValueError("zero polynomial has no rank caps")
    if h_even > h_odd:
        lead, trail = h_even, h_odd
        if sigma2 > 0:
            n_lead, n_trail = lead ** (L - 1), lead ** (L - 1) - 1
        else:
            n_lead = lead ** (L - 1)
            n_trail = (lead ** (L - 1) - lead + trail) if trail != -math.inf else -math.inf
        return n_lead, n_trail
    lead, trail = h_odd, h_even
    if sigma2 > 0:
        n_lead, n_trail = lead ** (L - 1), lead ** (L - 1) - 1
    else:
        n_lead = lead ** (L - 1)
        n_trail = (lead ** (L - 1) - lead + trail) if trail != -math.inf else -math.inf
    return n_trail, n_lead  # (N_even, N_odd)


def predict_exponent(act: ActivationSpec, cfg: NetworkConfig, kind: str,
                     parity: str, d: int) -> ExponentPrediction:
    """Predicted eigenvalue structure of the configured kernel on S^d.

    Selects the effective activation for the queried parity (the even/odd
    part when the relevant bias variance vanishes and either depth is 2 or
    the activation itself has a parity), then branches on its smoothness:
    discontinuous, finitely smooth, smooth non-polynomial, or polynomial.
    """
    if kind not in ("nngp", "ntk"):
        raise ValueError("kind must be 'nngp' or 'ntk'")
    if parity == "all":
        even = predict_exponent(act, cfg, kind, "even", d)
        odd = predict_exponent(act, cfg, kind, "odd", d)
        if even == odd.__class__(**{**odd.__dict__, "parity": "even"}):
            return ExponentPrediction(**{**even.__dict__, "parity": "all"})
        return _dominant_prediction(even, odd)
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even', 'odd', or 'all'")

    report = classify(act)
    if kind == "ntk" and report.smoothness == 0:
        raise NTKUndefined(
            f"the NTK of discontinuous activation {act.name!r} is undefined"
        )
    sigma2 = cfg.sigma_b2 * cfg.sigma_i2 if kind == "nngp" else cfg.sigma_b2
    use_part = sigma2 == 0.0 and (cfg.depth == 2 or report.parity in ("even", "odd"))
    if use_part:
        part_even, part_odd = even_odd_parts(act)
        tilde = part_even if parity == "even" else part_odd
        s = report.even_smoothness if parity == "even" else report.odd_smoothness
        poly_degree = (
            report.even_polynomial_degree if parity == "even" else report.odd_polynomial_degree
        )
    else:
        tilde = act
        s = report.smoothness
        poly_degree = report.polynomial_degree

    if poly_degree is not None:
        if poly_degree == -math.inf:
            max_l = 0 if (sigma2 > 0 and parity == "even") else -math.inf
            return ExponentPrediction(
                kind=kind, parity=parity, case="zero-function",
                finite_rank=True, max_degree=max_l,
            )
        h_even, h_odd = _hermite_parity_degrees(tilde)
        n_even, n_odd = _polynomial_rank_caps(h_even, h_odd, cfg.depth, sigma2)
        return ExponentPrediction(
            kind=kind, parity=parity, case="polynomial",
            finite_rank=True, max_degree=n_even if parity == "even" else n_odd,
        )
    if s == 0:
        if kind == "ntk":
            raise NTKUndefined(
                f"NTK prediction requested for discontinuous effective activation "
                f"{tilde.name!r}"
            )
        return ExponentPrediction(
            kind=kind, parity=parity, case="discontinuous",
            exponent=-(d + 2.0 ** (2 - cfg.depth)),
        )
    if s == math.inf:
        return ExponentPrediction(
            kind=kind, parity=parity, case="smooth-non-polynomial",
            superpolynomial=True,
        )
    offset = 1 if kind == "nngp" else -1
    return ExponentPrediction(
        kind=kind, parity=parity, case="finite-smoothness",
        exponent=-(d + 2.0 * s + offset),
    )


def _dominant_prediction(even: ExponentPrediction, odd: ExponentPrediction):
    """Pick the branch whose eigenvalues dominate a mixed-parity fit."""

    def rank(p):
        if p.exponent is not None:
            return (2, p.exponent)
        if p.superpolynomial:
            return (1, -math.inf)
        return (0, p.max_degree if p.max_degree is not None else -math.inf)

    winner = max((even, odd), key=rank)
    return ExponentPrediction(**{**winner.__dict__, "parity": "all"})
