"""Dual activations: t -> E[f(u) f(v)] for unit-variance Gaussians with correlation t.

Three interchangeable backends:

* ``hermite``: the power series sum_n a_n(f)^2 t^n from a truncated Hermite
  expansion, plus a power-law completion of the truncated tail.  The tail
  mass is known exactly from Bessel's identity (E[f^2] minus the captured
  coefficient mass, computed per parity), so the completion only chooses the
  profile, never the total.
* ``quadrature``: the quadrant-split 2-D Gauss-Legendre scheme.  The plane is
  split into the four sign quadrants so every patch integrand is smooth even
  when f has a kink or jump at zero; each quadrant integral is mapped to two
  rectangular patches.  Sign-flipped quadrants reuse the positive-quadrant
  integral with f composed with negation and correlation -t.
* ``closed_form``: exact expressions for the handful of activations that have
  them (step/heaviside, relu, the reference activation s_0); used as oracles.

All evaluators are immutable and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace as dc_replace
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_legendre

from .activations import ActivationSpec, evaluate, even_odd_parts, scale_activation
from .errors import DomainError, NotPseudoDifferentiable, TruncationWarning
from .hermite import GaussHermiteRule, HermiteSeries, default_rule, expand, hermite_matrix

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
BOUNDARY_EPS = 1e-9
TAIL_MODEL_LENGTH = 40000


@dataclass(frozen=True)
class QuadrantRule:
    """Parameters of the quadrant-split rule: cutoff c (in sigmas) and grid size."""

    c: float = 12.0
    n: int = 50

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("cutoff c must be positive")
        if self.n < 2:
            raise ValueError("grid size must be at least 2")


@dataclass(frozen=True)
class DualActivation:
    """Evaluator for a dual activation on [-1, 1]."""

    backend: str
    evaluator: Callable
    value_at_one: float
    source: str = ""

    def __call__(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(np.abs(t_arr) > 1.0 + 1e-12):
            raise DomainError("dual activations are defined on [-1, 1]")
        t_arr = np.clip(t_arr, -1.0, 1.0)
        out = np.asarray(self.evaluator(t_arr), float)
        return float(out[0]) if np.ndim(t) == 0 else out

    def cached(self, degree: int = 256, tol: float = 1e-9, max_degree: int = 4096):
        """Chebyshev-interpolated copy for fast repeated evaluation.

        The degree doubles until the interpolant beats ``tol`` against direct
        evaluation on a dense probe grid (boundary singularities of kinked
        activations typically need more than the starting degree).
        """
        probe = np.cos(np.linspace(0.0, math.pi, 1536))
        exact = self(probe)
        while True:
            nodes = np.cos(np.pi * np.arange(degree + 1) / degree)
            vals = self(nodes)
            coeffs = np.polynomial.chebyshev.chebfit(nodes, vals, degree)
            err = float(np.max(np.abs(np.polynomial.chebyshev.chebval(probe, coeffs) - exact)))
            if err < tol or degree >= max_degree:
                break
            degree *= 2
        return dc_replace(
            self,
            backend=f"{self.backend}+chebyshev",
            evaluator=lambda t, c=coeffs: np.polynomial.chebyshev.chebval(t, c),
        )


# ---------------------------------------------------------------------------
# hermite backend
# ---------------------------------------------------------------------------


def dual_from_hermite(series: HermiteSeries) -> DualActivation:
    """Plain truncated power series t -> sum a_n^2 t^n (Horner)."""
    sq = series.coeffs**2

    def ev(t, sq=sq):
        out = np.zeros_like(np.asarray(t, float))
        for c in sq[::-1]:
            out = out * t + c
        return out

    return DualActivation(
        backend="hermite_series",
        evaluator=ev,
        value_at_one=float(sq.sum()),
        source=series.source,
    )


def _fit_tail_model(sq: np.ndarray, parity: int, mass: float, n_start: int):
    """Power-law model coefficients for the truncated tail of one parity."""
    sub = sq[parity::2]
    nz = np.nonzero(sub > 0)[0]
    if len(nz) < 8:
        return None
    idx = nz[nz >= max(nz[-1] // 2, 1)]
    ns = 2.0 * idx + parity + 1.0
    slope = np.polyfit(np.log(ns), np.log(sub[idx]), 1)[0]
    if not np.isfinite(slope) or slope >= -1.05:
        return None
    n_tail = np.arange(n_start, n_start + TAIL_MODEL_LENGTH)
    n_tail = n_tail[n_tail % 2 == parity]
    model = (n_tail + 1.0) ** slope
    model *= mass / model.sum()
    return n_tail, model


def _residual_masses(act: ActivationSpec, sq: np.ndarray, rule: GaussHermiteRule):
    even, odd = even_odd_parts(act)
    m = {}
    for parity, part in ((0, even), (1, odd)):
        total = rule.integrate(evaluate(part, rule.nodes) ** 2)
        m[parity] = max(total - float(sq[parity::2].sum()), 0.0)
    return m


def hermite_dual(act: ActivationSpec, n_coeffs: int = 512,
                 rule: GaussHermiteRule | None = None,
                 tail_completion: bool = True) -> DualActivation:
    """Hermite-backend dual of an activation.

    With tail completion (default), the exact residual coefficient mass per
    parity is spread over n > N following the fitted power-law decay of the
    trailing coefficients, which repairs the truncation error near t = +-1
    and makes the value at 1 equal E[f(X)^2] exactly.
    """
    import warnings as _warnings

    rule = rule or default_rule()
    with _warnings.catch_warnings():
        # the tail completion below is the remedy for exactly the loss the
        # truncation warning reports
        if tail_completion:
            _warnings.simplefilter("ignore", TruncationWarning)
        series = expand(act, n_coeffs, rule)
    sq = series.coeffs**2
    base = dual_from_hermite(series)
    if not tail_completion:
        return dc_replace(base, source=act.name)
    masses = _residual_masses(act, sq, rule)
    tails = []
    total_sq = float(sq.sum())
    for parity in (0, 1):
        if masses[parity] <= 1e-15 * max(total_sq, 1.0):
            continue
        model = _fit_tail_model(sq, parity, masses[parity], n_coeffs + 1)
        if model is not None:
            tails.append(model)

    def ev(t, base_ev=base.evaluator, tails=tuple(tails)):
        t = np.asarray(t, float)
        out = np.asarray(base_ev(t), float).copy()
        for n_tail, model in tails:
            for lo in range(0, n_tail.size, 4096):
                chunk_n = n_tail[lo : lo + 4096]
                chunk_m = model[lo : lo + 4096]
                out += (t[..., None] ** chunk_n) @ chunk_m
        return out

    captured = total_sq + sum(model.sum() for _, model in tails)
    return DualActivation(
        backend="hermite_series",
        evaluator=ev,
        value_at_one=float(captured),
        source=act.name,
    )


# ---------------------------------------------------------------------------
# quadrature backend
# ---------------------------------------------------------------------------


def _norm_pdf(x):
    return np.exp(-0.5 * x * x) * _INV_SQRT_2PI


def _quadrant_integral(fu, fv, rho, rule: QuadrantRule):
    """Integral of fu(u) fv(v) over the (+,+) quadrant under correlation rho.

    Patch A covers the wedge |y| <= (sigma_x/sigma_y) x, x <= c sigma_y in the
    rotated coordinates; patch B the remaining strip up to the cutoff.  Both
    are mapped to [0,1] x [-1,1] and integrated with Gauss-Legendre grids.
    """
    c, n = rule.c, rule.n
    rho = np.atleast_1d(np.asarray(rho, float))
    sx = np.sqrt((1.0 + rho) / 2.0)[:, None, None]
    sy = np.sqrt((1.0 - rho) / 2.0)[:, None, None]
    xg, wg = roots_legendre(n)
    x01 = (0.5 * (xg + 1.0))[None, :, None]
    ym = xg[None, None, :]
    wxy = (0.5 * np.outer(wg, wg))[None, :, :]

    u = c * sx * sy * x01 * (1.0 + ym)
    v = c * sx * sy * x01 * (1.0 - ym)
    wa = (c * sy) * (c * sx) * x01 * _norm_pdf(c * sy * x01) * _norm_pdf(c * sx * x01 * ym)
    total = np.sum(fu(u) * fv(v) * wa * wxy, axis=(1, 2))

    u = c * sx * sy * (1.0 + ym) + c * sx * x01
    v = c * sx * sy * (1.0 - ym) + c * sx * x01
    wb = c * (c * sx) * _norm_pdf(c * sy + c * x01) * _norm_pdf(c * sx * ym)
    total += np.sum(fu(u) * fv(v) * wb * wxy, axis=(1, 2))
    return total


def dual_via_quadrature(act: ActivationSpec, rho, rule: QuadrantRule | None = None,
                        chunk: int = 256):
    """Dual activation values by quadrant-split quadrature; needs |rho| < 1.

    The four sign quadrants assemble as q(f,f; rho) + q(f-,f-; rho) +
    2 q(f,f-; -rho) with f- = f(-*) (mixed quadrants carry correlation -rho
    and are equal to each other by the u <-> v symmetry of the Gaussian).
    """
    rule = rule or QuadrantRule()
    rho_arr = np.atleast_1d(np.asarray(rho, float))
    if np.any(np.abs(rho_arr) >= 1.0):
        raise DomainError(
            "quadrature dual needs |rho| < 1; use dual_at_boundary at the endpoints"
        )
    f = lambda x: np.asarray(evaluate_branches(act, x), float)
    fneg = lambda x: np.asarray(evaluate_branches(act, -x), float)
    out = np.empty_like(rho_arr)
    for lo in range(0, rho_arr.size, chunk):
        r = rho_arr[lo : lo + chunk]
        out[lo : lo + chunk] = (
            _quadrant_integral(f, f, r, rule)
            + _quadrant_integral(fneg, fneg, r, rule)
            + 2.0 * _quadrant_integral(f, fneg, -r, rule)
        )
    return float(out[0]) if np.ndim(rho) == 0 else out


def evaluate_branches(act: ActivationSpec, x):
    """Branch-only evaluation (x never lands exactly on 0 inside quadrature grids)."""
    x = np.asarray(x, float)
    return np.where(x >= 0, np.asarray(act.eval_pos(x), float), np.asarray(act.eval_neg(x), float))


def dual_at_boundary(act: ActivationSpec, tau: int,
                     rule: GaussHermiteRule | None = None) -> float:
    """Endpoint values: tau=+1 gives E[f(X)^2]; tau=-1 gives E[f(X) f(-X)]."""
    if tau not in (1, -1):
        raise ValueError("tau must be +1 or -1")
    rule = rule or default_rule()
    vals = evaluate(act, rule.nodes)
    if tau == 1:
        return rule.integrate(vals * vals)
    return rule.integrate(vals * evaluate(act, -rule.nodes))


def quadrature_dual(act: ActivationSpec, rule: QuadrantRule | None = None) -> DualActivation:
    """Quadrature-backend dual with endpoint routing.

    |t| >= 1 - 1e-9 is answered with the exact 1-D endpoint integrals; the
    2-D rule handles everything else (it stays accurate arbitrarily close to
    the boundary, so no intermediate fallback is needed).
    """
    rule = rule or QuadrantRule()
    at_one = dual_at_boundary(act, +1)
    at_minus_one = dual_at_boundary(act, -1)

    def ev(t, act=act, rule=rule, hi=at_one, lo=at_minus_one):
        t = np.asarray(t, float)
        out = np.empty_like(t)
        near_hi = t >= 1.0 - BOUNDARY_EPS
        near_lo = t <= -1.0 + BOUNDARY_EPS
        inner = ~(near_hi | near_lo)
        out[near_hi] = hi
        out[near_lo] = lo
        if inner.any():
            out[inner] = dual_via_quadrature(act, t[inner], rule)
        return out

    return DualActivation(
        backend="quadrature", evaluator=ev, value_at_one=at_one, source=act.name
    )


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _closed_form_tag(act: ActivationSpec) -> Optional[str]:
    if act.name in ("heaviside", "step"):
        return "step"
    if act.name == "relu":
        return "relu"
    if act.name == "sk:0":
        return "sign_half"
    return None


def closed_form_dual(act: ActivationSpec) -> DualActivation:
    """Exact dual for the few activations with classical closed forms."""
    tag = _closed_form_tag(act)
    if tag is None:
        raise DomainError(f"no closed-form dual for {act.name!r}")
    if tag == "step":
        ev = lambda t: 0.5 - np.arccos(np.clip(t, -1, 1)) / (2 * np.pi)
        one = 0.5
    elif tag == "sign_half":
        ev = lambda t: 0.25 - np.arccos(np.clip(t, -1, 1)) / (2 * np.pi)
        one = 0.25
    else:  # relu
        def ev(t):
            t = np.clip(t, -1, 1)
            return (np.sqrt(np.maximum(1 - t * t, 0.0)) + t * (np.pi - np.arccos(t))) / (2 * np.pi)

        one = 0.5
    return DualActivation(backend="closed_form", evaluator=ev, value_at_one=one, source=act.name)


# ---------------------------------------------------------------------------
# rescaling and derivatives
# ---------------------------------------------------------------------------


def rescale(act: ActivationSpec, a: float) -> ActivationSpec:
    """Input-rescaled activation x -> f(a x), a > 0.

    Jump coefficients scale as delta_k * a^k; smoothness and parity are
    unchanged.
    """
    if a <= 0:
        raise ValueError("rescale factor must be positive")
    if a == 1.0:
        return act
    table = None
    if act.one_sided_derivs is not None:
        table = tuple(
            (a**k * left, a**k * right) for k, (left, right) in enumerate(act.one_sided_derivs)
        )
    factory = None
    if act.derivative_factory is not None:
        # d/dx f(a x) = a f'(a x)
        factory = lambda act=act, a=a: scale_activation(rescale(act.derivative(), a), a)
    params = dict(act.params)
    if "coeffs" in params:
        params["coeffs"] = tuple(c * a**k for k, c in enumerate(params["coeffs"]))
    return ActivationSpec(
        name=f"{act.name}@{a:g}",
        eval_neg=lambda x, act=act, a=a: np.asarray(act.eval_neg(a * np.asarray(x, float)), float),
        eval_pos=lambda x, act=act, a=a: np.asarray(act.eval_pos(a * np.asarray(x, float)), float),
        one_sided_derivs=table,
        declared_smoothness=act.declared_smoothness,
        polynomial_degree=act.polynomial_degree,
        params=params,
        parity=act.parity,
        derivative_factory=factory,
    )


def dual_derivative(act: ActivationSpec, backend: str = "hermite", **kwargs) -> DualActivation:
    """Dual of the pseudo-derivative of a continuous activation.

    This equals the derivative of the activation's own dual, term by term in
    the power series; discontinuous activations have no pseudo-derivative.
    """
    if act.is_discontinuous():
        raise NotPseudoDifferentiable(
            f"{act.name!r} is discontinuous at 0; its dual has no derivative rule"
        )
    return make_dual(act.derivative(), backend=backend, **kwargs)


def make_dual(act: ActivationSpec, backend: str = "hermite",
              n_coeffs: int = 512,
              hermite_rule: GaussHermiteRule | None = None,
              quad_rule: QuadrantRule | None = None) -> DualActivation:
    """Factory over the three backends ("hermite", "quadrature", "closed_form")."""
    if backend == "hermite":
        return hermite_dual(act, n_coeffs=n_coeffs, rule=hermite_rule)
    if backend == "quadrature":
        return quadrature_dual(act, rule=quad_rule)
    if backend == "closed_form":
        return closed_form_dual(act)
    raise ValueError(f"unknown dual backend {backend!r}")
