"""Piecewise-smooth activation functions and their smoothness structure.

An activation is described by its two smooth branches (one on each side of
zero) plus the midpoint convention at zero.  The interesting structure is
entirely local to the origin: the table of one-sided derivative limits
determines the jump coefficients ``delta_k = f^(k)(0+) - f^(k)(0-)``, the
smoothness order (first k with a jump), and the smoothness of the even/odd
parts.  Built-in activations carry analytic derivative tables so that
classification is exact and deterministic; black-box callables fall back to
one-sided Richardson-extrapolated finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import AmbiguousSmoothness, NotPseudoDifferentiable, UnknownActivation

DERIV_TABLE_ORDER = 6

# pinned scale constants for selu (the usual published self-normalizing values)
SELU_LAMBDA = 1.0507009873554805
SELU_ALPHA = 1.6732632423543772

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _norm_pdf(x):
    return np.exp(-0.5 * np.asarray(x, float) ** 2) * _INV_SQRT_2PI


def _norm_cdf(x):
    from scipy.special import erf

    return 0.5 * (1.0 + erf(np.asarray(x, float) / math.sqrt(2.0)))


@dataclass(frozen=True)
class ActivationSpec:
    """A piecewise activation (branches for x<0 and x>0) with metadata.

    ``one_sided_derivs[k] = (f^(k)(0-), f^(k)(0+))`` for k = 0..DERIV_TABLE_ORDER
    when known analytically.  ``polynomial_degree`` is an int for polynomials,
    ``-inf`` for the zero function, and None otherwise.  ``parity`` is one of
    "even", "odd", "neither", or None (unknown).
    """

    name: str
    eval_neg: Callable
    eval_pos: Callable
    one_sided_derivs: Optional[tuple] = None
    declared_smoothness: Optional[float] = None
    polynomial_degree: Optional[float] = None
    params: dict = field(default_factory=dict)
    parity: Optional[str] = None
    derivative_factory: Optional[Callable] = None

    @property
    def value_at_zero(self) -> float:
        """Midpoint of the two one-sided limits at zero."""
        if self.one_sided_derivs is not None:
            left, right = self.one_sided_derivs[0]
        else:
            tiny = 5e-324
            left = float(self.eval_neg(-tiny))
            right = float(self.eval_pos(tiny))
        return 0.5 * (left + right)

    def __call__(self, x):
        return evaluate(self, x)

    def derivative(self) -> "ActivationSpec":
        """Pseudo-derivative as a new spec; fails for discontinuous activations."""
        if self.is_discontinuous():
            raise NotPseudoDifferentiable(
                f"{self.name} is discontinuous at 0 and has no pseudo-derivative"
            )
        if self.derivative_factory is None:
            raise NotPseudoDifferentiable(
                f"no derivative available for activation {self.name!r}"
            )
        return self.derivative_factory()

    def is_discontinuous(self) -> bool:
        if self.one_sided_derivs is not None:
            left, right = self.one_sided_derivs[0]
            return left != right
        return self.declared_smoothness == 0

    def is_zero(self) -> bool:
        return self.polynomial_degree == -math.inf


@dataclass(frozen=True)
class SmoothnessReport:
    """Jump structure of an activation and of its even/odd parts."""

    smoothness: float
    deltas: tuple
    parity: str
    even_smoothness: float
    odd_smoothness: float
    polynomial_degree: Optional[float]
    even_polynomial_degree: Optional[float]
    odd_polynomial_degree: Optional[float]

    def to_dict(self) -> dict:
        def enc(v):
            if v is None:
                return None
            if v == math.inf:
                return "inf"
            if v == -math.inf:
                return "-inf"
            return v

        return {
            "smoothness": enc(self.smoothness),
            "deltas": list(self.deltas),
            "parity": self.parity,
            "even_smoothness": enc(self.even_smoothness),
            "odd_smoothness": enc(self.odd_smoothness),
            "polynomial_degree": enc(self.polynomial_degree),
            "even_polynomial_degree": enc(self.even_polynomial_degree),
            "odd_polynomial_degree": enc(self.odd_polynomial_degree),
        }


def evaluate(act: ActivationSpec, x, at_zero: str = "midpoint"):
    """Evaluate the activation: branch values off zero, midpoint at zero.

    ``at_zero="left"`` uses the left limit instead, the convention used for
    activation derivatives inside finite-width backpropagation.
    """
    x_arr = np.asarray(x, dtype=float)
    scalar = x_arr.ndim == 0
    x_arr = np.atleast_1d(x_arr)
    out = np.empty_like(x_arr)
    neg = x_arr < 0
    pos = x_arr > 0
    zero = ~(neg | pos)
    if neg.any():
        out[neg] = np.asarray(act.eval_neg(x_arr[neg]), float)
    if pos.any():
        out[pos] = np.asarray(act.eval_pos(x_arr[pos]), float)
    if zero.any():
        if at_zero == "left":
            if act.one_sided_derivs is not None:
                out[zero] = act.one_sided_derivs[0][0]
            else:
                out[zero] = float(act.eval_neg(-5e-324))
        else:
            out[zero] = act.value_at_zero
    return float(out[0]) if scalar else out


def even_odd_parts(act: ActivationSpec):
    """Split into (even, odd) specs with derived one-sided derivative tables.

    The k-th derivative of x -> f(-x) at 0+ is (-1)^k f^(k)(0-), which gives
    the sign bookkeeping for the part tables.
    """
    table = act.one_sided_derivs
    even_table = odd_table = None
    if table is not None:
        even_table = tuple(
            (
                0.5 * (left + (-1.0) ** k * right),
                0.5 * (right + (-1.0) ** k * left),
            )
            for k, (left, right) in enumerate(table)
        )
        odd_table = tuple(
            (
                0.5 * (left - (-1.0) ** k * right),
                0.5 * (right - (-1.0) ** k * left),
            )
            for k, (left, right) in enumerate(table)
        )

    def part_eval(sign):
        def on_neg(x, act=act, sign=sign):
            return 0.5 * (np.asarray(act.eval_neg(x), float) + sign * np.asarray(act.eval_pos(-x), float))

        def on_pos(x, act=act, sign=sign):
            return 0.5 * (np.asarray(act.eval_pos(x), float) + sign * np.asarray(act.eval_neg(-x), float))

        return on_neg, on_pos

    even_neg, even_pos = part_eval(+1.0)
    odd_neg, odd_pos = part_eval(-1.0)

    def part_derivative(parent, which):
        # (f_even)' = (f')_odd and (f_odd)' = (f')_even
        def factory():
            dparent = parent.derivative()
            de, do = even_odd_parts(dparent)
            return do if which == "even" else de

        return factory

    even_poly = _part_polynomial_degree(act, even_neg, even_pos, "even")
    odd_poly = _part_polynomial_degree(act, odd_neg, odd_pos, "odd")

    def part_params(which):
        params = dict(act.params)
        coeffs = params.get("coeffs")
        if coeffs is not None:
            keep = 0 if which == "even" else 1
            params["coeffs"] = tuple(
                c if k % 2 == keep else 0.0 for k, c in enumerate(coeffs)
            )
        return params

    even = ActivationSpec(
        name=f"{act.name}_even",
        eval_neg=even_neg,
        eval_pos=even_pos,
        one_sided_derivs=even_table,
        declared_smoothness=_part_declared_smoothness(act, even_table, even_poly),
        polynomial_degree=even_poly,
        params=part_params("even"),
        parity="even",
        derivative_factory=part_derivative(act, "even") if act.derivative_factory else None,
    )
    odd = ActivationSpec(
        name=f"{act.name}_odd",
        eval_neg=odd_neg,
        eval_pos=odd_pos,
        one_sided_derivs=odd_table,
        declared_smoothness=_part_declared_smoothness(act, odd_table, odd_poly),
        polynomial_degree=odd_poly,
        params=part_params("odd"),
        parity="odd",
        derivative_factory=part_derivative(act, "odd") if act.derivative_factory else None,
    )
    return even, odd


def _part_declared_smoothness(act, table, poly_degree):
    if poly_degree is not None:
        return math.inf
    if table is not None:
        for k, (left, right) in enumerate(table):
            if left != right:
                return k
    if act.declared_smoothness == math.inf:
        return math.inf
    return None


def _part_polynomial_degree(act, eval_neg, eval_pos, which, degree_cap: int = 12):
    """Detect whether a constructed even/odd part is a polynomial (degree <= cap).

    Exact for explicit polynomial parents; a dense least-squares residual test
    otherwise.  Parts of common activations that collapse to polynomials
    (e.g. the odd part of relu) are caught by the residual test.
    """
    if act.polynomial_degree is not None:
        coeffs = act.params.get("coeffs")
        if coeffs is not None:
            keep = 0 if which == "even" else 1
            part = [c if k % 2 == keep else 0.0 for k, c in enumerate(coeffs)]
            return _poly_degree_of_coeffs(part)
    xs = np.linspace(-4.0, 4.0, 241)
    xs = xs[xs != 0]
    ys = np.where(xs < 0, np.asarray(eval_neg(xs), float), np.asarray(eval_pos(xs), float))
    scale = max(1.0, float(np.max(np.abs(ys))))
    if np.max(np.abs(ys)) <= 1e-14 * scale:
        return -math.inf
    # Chebyshev fit keeps the residual test well conditioned; degree and
    # parity read off Chebyshev indices exactly as off monomial ones
    coef = np.polynomial.chebyshev.chebfit(xs, ys, degree_cap)
    resid = np.max(np.abs(np.polynomial.chebyshev.chebval(xs, coef) - ys))
    if resid > 1e-9 * scale:
        return None
    return _poly_degree_of_coeffs(coef, tol=1e-9 * scale)


def _poly_degree_of_coeffs(coeffs, tol=0.0):
    deg = -math.inf
    for k, c in enumerate(coeffs):
        if abs(c) > tol:
            deg = k
    return deg


def _deltas_from_table(table, max_order):
    return [right - left for (left, right) in table[: max_order + 1]]


def _one_sided_derivative_numeric(f, side, k, steps=(1e-2, 1e-3, 1e-4, 1e-5)):
    """One-sided k-th derivative at 0 by forward differences + Richardson.

    Returns (estimate, noise_estimate, scale).
    """
    sign = 1.0 if side == "+" else -1.0
    from math import comb

    estimates = []
    for h in steps:
        nodes = sign * h * np.arange(1, k + 2)
        vals = np.asarray(f(nodes), float)
        diff = sum((-1.0) ** (k - j) * comb(k, j) * vals[j] for j in range(k + 1))
        estimates.append(diff / (sign * h) ** k)
    # first-order Richardson across the step ladder (forward-difference error is O(h))
    ratio = steps[0] / steps[1]
    extrap = [
        (estimates[i + 1] * ratio - estimates[i]) / (ratio - 1.0)
        for i in range(len(estimates) - 1)
    ]
    noise = abs(extrap[-1] - extrap[-2]) if len(extrap) >= 2 else abs(extrap[-1] - estimates[-1])
    mag = max(abs(e) for e in estimates) + 1.0
    return extrap[-1], noise, mag


def classify(act: ActivationSpec, max_order: int = DERIV_TABLE_ORDER) -> SmoothnessReport:
    """Smoothness, jumps, parity, and even/odd-part structure of an activation.

    Built-ins are classified from their analytic derivative tables.  The
    numeric fallback declares a jump only when the extrapolated estimate
    clears 1e-4 * (1 + local derivative scale) and raises AmbiguousSmoothness
    when an estimate lands in the grey zone around that threshold.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    deltas = _jump_coefficients(act, max_order)
    smoothness = _smoothness_from_deltas(act, deltas, max_order)
    parity = act.parity or _detect_parity(act)
    even, odd = even_odd_parts(act)
    even_s = _smoothness_from_deltas(even, _jump_coefficients(even, max_order), max_order)
    odd_s = _smoothness_from_deltas(odd, _jump_coefficients(odd, max_order), max_order)
    return SmoothnessReport(
        smoothness=smoothness,
        deltas=tuple(deltas),
        parity=parity,
        even_smoothness=even_s,
        odd_smoothness=odd_s,
        polynomial_degree=act.polynomial_degree,
        even_polynomial_degree=even.polynomial_degree,
        odd_polynomial_degree=odd.polynomial_degree,
    )


def _jump_coefficients(act: ActivationSpec, max_order: int):
    """Jumps delta_k for k <= max_order; numeric estimates stop at the first jump.

    Past the first jump, one-sided difference stencils straddle the kink's
    amplified rounding noise and estimate nothing meaningful, so the numeric
    fallback reports deltas only up to and including the detected smoothness
    order.
    """
    table = act.one_sided_derivs
    if table is not None and len(table) > max_order:
        return _deltas_from_table(table, max_order)
    if table is None and act.polynomial_degree is not None:
        return [0.0] * (max_order + 1)
    deltas = []
    for k in range(max_order + 1):
        if table is not None and k < len(table):
            left, right = table[k]
            deltas.append(right - left)
            if right != left:
                break
            continue
        right, noise_r, mag_r = _one_sided_derivative_numeric(
            lambda x: evaluate(act, x), "+", k
        )
        left, noise_l, mag_l = _one_sided_derivative_numeric(
            lambda x: evaluate(act, x), "-", k
        )
        delta = right - left
        threshold = 1e-4 * (1.0 + max(mag_r, mag_l))
        noise = 3.0 * (noise_r + noise_l)
        if abs(delta) > max(threshold, noise):
            deltas.append(delta)
            break
        if abs(delta) > 0.1 * threshold:
            raise AmbiguousSmoothness(
                f"order-{k} jump estimate {delta:.3e} of {act.name!r} is not separable "
                f"from estimator noise (threshold {threshold:.3e})"
            )
        deltas.append(0.0)
    return deltas


def _smoothness_from_deltas(act: ActivationSpec, deltas, max_order: int):
    for k, d in enumerate(deltas):
        if d != 0.0:
            return k
    if act.polynomial_degree is not None:
        return math.inf
    if act.declared_smoothness is not None and act.declared_smoothness > max_order:
        return act.declared_smoothness
    if act.declared_smoothness == math.inf:
        return math.inf
    raise AmbiguousSmoothness(
        f"{act.name!r}: no jump up to order {max_order} and no declared smoothness"
    )


def _detect_parity(act: ActivationSpec, n_grid: int = 64) -> str:
    xs = np.linspace(0.05, 4.0, n_grid)
    fp = evaluate(act, xs)
    fm = evaluate(act, -xs)
    scale = max(1.0, float(np.max(np.abs(fp))), float(np.max(np.abs(fm))))
    if np.max(np.abs(fp - fm)) <= 1e-12 * scale:
        return "even"
    if np.max(np.abs(fp + fm)) <= 1e-12 * scale:
        return "odd"
    return "neither"


# ---------------------------------------------------------------------------
# built-in registry
# ---------------------------------------------------------------------------


def _table(rows):
    """Pad a list of (left, right) rows with zeros up to DERIV_TABLE_ORDER."""
    rows = list(rows)
    while len(rows) <= DERIV_TABLE_ORDER:
        rows.append((0.0, 0.0))
    return tuple(rows[: DERIV_TABLE_ORDER + 1])


def _smooth_table(derivs_at_zero):
    return _table([(v, v) for v in derivs_at_zero])


def _smooth_spec(name, f, df_spec_factory, derivs_at_zero, parity, params=None, poly=None):
    return ActivationSpec(
        name=name,
        eval_neg=f,
        eval_pos=f,
        one_sided_derivs=_smooth_table(derivs_at_zero),
        declared_smoothness=math.inf,
        polynomial_degree=poly,
        params=params or {},
        parity=parity,
        derivative_factory=df_spec_factory,
    )


def reference_activation(k: int) -> ActivationSpec:
    """s_k(x) = sgn(x) x^k / (2 k!), the canonical order-k non-smoothness."""
    if k < 0:
        raise ValueError("k must be >= 0")
    c = 0.5 / math.factorial(k)

    def on_pos(x, c=c, k=k):
        return c * np.asarray(x, float) ** k

    def on_neg(x, c=c, k=k):
        return -c * np.asarray(x, float) ** k

    # d/dx s_k = s_{k-1}; s_0 has no pseudo-derivative
    factory = (lambda k=k: reference_activation(k - 1)) if k >= 1 else None
    rows = [(0.0, 0.0)] * k + [(-0.5, 0.5)]
    return ActivationSpec(
        name=f"sk:{k}",
        eval_neg=on_neg,
        eval_pos=on_pos,
        one_sided_derivs=_table(rows),
        declared_smoothness=k,
        polynomial_degree=None,
        params={"k": k},
        parity="odd" if k % 2 == 0 else "even",
        derivative_factory=factory,
    )


def _relu():
    return ActivationSpec(
        name="relu",
        eval_neg=lambda x: np.zeros_like(np.asarray(x, float)),
        eval_pos=lambda x: np.asarray(x, float),
        one_sided_derivs=_table([(0.0, 0.0), (0.0, 1.0)]),
        declared_smoothness=1,
        parity="neither",
        derivative_factory=_step,
    )


def _step():
    # pseudo-derivative of relu: the unit step (value at 0 immaterial a.e.)
    return ActivationSpec(
        name="step",
        eval_neg=lambda x: np.zeros_like(np.asarray(x, float)),
        eval_pos=lambda x: np.ones_like(np.asarray(x, float)),
        one_sided_derivs=_table([(0.0, 1.0)]),
        declared_smoothness=0,
        parity="neither",
    )


def _heaviside():
    spec = _step()
    return replace(spec, name="heaviside")


def _leakyrelu(eps=0.01):
    if eps == -1.0:
        raise ValueError("leakyrelu with eps = -1 is the identity; use poly:0,1")

    def dfac(eps=eps):
        return ActivationSpec(
            name="leakyrelu'",
            eval_neg=lambda x: np.full_like(np.asarray(x, float), -eps),
            eval_pos=lambda x: np.ones_like(np.asarray(x, float)),
            one_sided_derivs=_table([(-eps, 1.0)]),
            declared_smoothness=0,
            params={"eps": eps},
        )

    return ActivationSpec(
        name="leakyrelu",
        eval_neg=lambda x: -eps * np.asarray(x, float),
        eval_pos=lambda x: np.asarray(x, float),
        one_sided_derivs=_table([(0.0, 0.0), (-eps, 1.0)]),
        declared_smoothness=1,
        params={"eps": eps},
        parity="neither",
        derivative_factory=dfac,
    )


def _exp_neg(x):
    return np.exp(np.minimum(np.asarray(x, float), 0.0))


def _selu(lam=SELU_LAMBDA, alpha=SELU_ALPHA):
    def dfac(lam=lam, alpha=alpha):
        rows = [(lam * alpha, lam)] + [(lam * alpha, 0.0)] * DERIV_TABLE_ORDER
        return ActivationSpec(
            name="selu'",
            eval_neg=lambda x: lam * alpha * _exp_neg(x),
            eval_pos=lambda x: np.full_like(np.asarray(x, float), lam),
            one_sided_derivs=_table(rows),
            declared_smoothness=0,
            params={"lam": lam, "alpha": alpha},
        )

    rows = [(0.0, 0.0), (lam * alpha, lam)] + [(lam * alpha, 0.0)] * (DERIV_TABLE_ORDER - 1)
    return ActivationSpec(
        name="selu",
        eval_neg=lambda x: lam * alpha * np.expm1(np.minimum(np.asarray(x, float), 0.0)),
        eval_pos=lambda x: lam * np.asarray(x, float),
        one_sided_derivs=_table(rows),
        declared_smoothness=1,
        params={"lam": lam, "alpha": alpha},
        parity="neither",
        derivative_factory=dfac,
    )


def _elu(alpha=1.0):
    def dfac(alpha=alpha):
        rows = [(alpha, 1.0)] + [(alpha, 0.0)] * DERIV_TABLE_ORDER
        return ActivationSpec(
            name="elu'",
            eval_neg=lambda x: alpha * _exp_neg(x),
            eval_pos=lambda x: np.ones_like(np.asarray(x, float)),
            one_sided_derivs=_table(rows),
            declared_smoothness=0 if alpha != 1.0 else 1,
            params={"alpha": alpha},
        )

    rows = [(0.0, 0.0), (alpha, 1.0)] + [(alpha, 0.0)] * (DERIV_TABLE_ORDER - 1)
    return ActivationSpec(
        name="elu",
        eval_neg=lambda x: alpha * np.expm1(np.minimum(np.asarray(x, float), 0.0)),
        eval_pos=lambda x: np.asarray(x, float),
        one_sided_derivs=_table(rows),
        declared_smoothness=1 if alpha != 1.0 else 2,
        params={"alpha": alpha},
        parity="neither",
        derivative_factory=dfac,
    )


def _celu(alpha=1.0):
    def dfac(alpha=alpha):
        rows = [(1.0, 1.0)] + [(alpha ** (-k), 0.0) for k in range(1, DERIV_TABLE_ORDER + 1)]
        return ActivationSpec(
            name="celu'",
            eval_neg=lambda x: _exp_neg(np.asarray(x, float) / alpha),
            eval_pos=lambda x: np.ones_like(np.asarray(x, float)),
            one_sided_derivs=_table(rows),
            declared_smoothness=1,
            params={"alpha": alpha},
        )

    rows = [(0.0, 0.0), (1.0, 1.0)] + [
        (alpha ** (1 - k), 0.0) for k in range(2, DERIV_TABLE_ORDER + 1)
    ]
    return ActivationSpec(
        name="celu",
        eval_neg=lambda x: alpha * np.expm1(np.minimum(np.asarray(x, float), 0.0) / alpha),
        eval_pos=lambda x: np.asarray(x, float),
        one_sided_derivs=_table(rows),
        declared_smoothness=2,
        params={"alpha": alpha},
        parity="neither",
        derivative_factory=dfac,
    )


def _repu(m=2):
    m = int(m)
    if m < 1:
        raise ValueError("repu power m must be >= 1")

    def dfac(m=m):
        if m == 1:
            return _step()
        base = _repu(m - 1)
        return scale_activation(base, float(m), name=f"repu:{m}'")

    rows = [(0.0, 0.0)] * m + [(0.0, float(math.factorial(m)))]
    return ActivationSpec(
        name=f"repu:{m}",
        eval_neg=lambda x: np.zeros_like(np.asarray(x, float)),
        eval_pos=lambda x, m=m: np.asarray(x, float) ** m,
        one_sided_derivs=_table(rows),
        declared_smoothness=m,
        params={"m": m},
        parity="neither",
        derivative_factory=dfac,
    )


def scale_activation(act: ActivationSpec, c: float, name=None) -> ActivationSpec:
    """c * f as a new spec (output scaling; jump coefficients scale by c)."""
    table = None
    if act.one_sided_derivs is not None:
        table = tuple((c * left, c * right) for (left, right) in act.one_sided_derivs)
    factory = None
    if act.derivative_factory is not None:
        factory = lambda: scale_activation(act.derivative(), c)
    poly = act.polynomial_degree
    if c == 0.0:
        poly = -math.inf
    return ActivationSpec(
        name=name or f"{c}*{act.name}",
        eval_neg=lambda x, act=act, c=c: c * np.asarray(act.eval_neg(x), float),
        eval_pos=lambda x, act=act, c=c: c * np.asarray(act.eval_pos(x), float),
        one_sided_derivs=table,
        declared_smoothness=act.declared_smoothness if c != 0.0 else math.inf,
        polynomial_degree=poly,
        params=dict(act.params),
        parity=act.parity,
        derivative_factory=factory,
    )


def _tanh():
    return _smooth_spec(
        "tanh",
        np.tanh,
        lambda: _smooth_spec(
            "tanh'",
            lambda x: 1.0 - np.tanh(x) ** 2,
            None,
            [1.0, 0.0, -2.0, 0.0, 16.0, 0.0, -272.0],
            "even",
        ),
        [0.0, 1.0, 0.0, -2.0, 0.0, 16.0, 0.0],
        "odd",
    )


def _sigmoid():
    def sig(x):
        return 1.0 / (1.0 + np.exp(-np.asarray(x, float)))

    def dsig_spec():
        return _smooth_spec(
            "sigmoid'",
            lambda x: sig(x) * (1.0 - sig(x)),
            None,
            [0.25, 0.0, -0.125, 0.0, 0.25, 0.0, -1.0625],
            "even",
        )

    return _smooth_spec(
        "sigmoid", sig, dsig_spec, [0.5, 0.25, 0.0, -0.125, 0.0, 0.25, 0.0], "neither"
    )


def _gelu():
    phi0 = _INV_SQRT_2PI

    def f(x):
        x = np.asarray(x, float)
        return x * _norm_cdf(x)

    def df_spec():
        return _smooth_spec(
            "gelu'",
            lambda x: _norm_cdf(x) + np.asarray(x, float) * _norm_pdf(x),
            None,
            [0.5, 2 * phi0, 0.0, -4 * phi0, 0.0, 18 * phi0, 0.0],
            "neither",
        )

    return _smooth_spec(
        "gelu", f, df_spec, [0.0, 0.5, 2 * phi0, 0.0, -4 * phi0, 0.0, 18 * phi0], "neither"
    )


def _silu():
    def sig(x):
        return 1.0 / (1.0 + np.exp(-np.asarray(x, float)))

    def f(x):
        x = np.asarray(x, float)
        return x * sig(x)

    def df_spec():
        return _smooth_spec(
            "silu'",
            lambda x: sig(x) * (1.0 + np.asarray(x, float) * (1.0 - sig(x))),
            None,
            [0.5, 0.5, 0.0, -0.5, 0.0, 1.5, 0.0],
            "neither",
        )

    return _smooth_spec("silu", f, df_spec, [0.0, 0.5, 0.5, 0.0, -0.5, 0.0, 1.5], "neither")


def _rbf():
    def f(x):
        return np.exp(-np.asarray(x, float) ** 2)

    def df_spec():
        return _smooth_spec(
            "rbf'",
            lambda x: -2.0 * np.asarray(x, float) * f(x),
            None,
            [0.0, -2.0, 0.0, 12.0, 0.0, -120.0, 0.0],
            "odd",
        )

    return _smooth_spec("rbf", f, df_spec, [1.0, 0.0, -2.0, 0.0, 12.0, 0.0, -120.0], "even")


def _softplus():
    def f(x):
        x = np.asarray(x, float)
        return np.logaddexp(0.0, x)

    return _smooth_spec(
        "softplus",
        f,
        lambda: _sigmoid(),
        [math.log(2.0), 0.5, 0.25, 0.0, -0.125, 0.0, 0.25],
        "neither",
    )


def _sin():
    return _smooth_spec(
        "sin",
        np.sin,
        lambda: _smooth_spec(
            "cos", np.cos, None, [1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0], "even"
        ),
        [0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0],
        "odd",
    )


def _poly(coeffs):
    coeffs = tuple(float(c) for c in coeffs)
    deg = _poly_degree_of_coeffs(coeffs)

    def f(x, coeffs=coeffs):
        return np.polynomial.polynomial.polyval(np.asarray(x, float), coeffs)

    rows = [
        (
            math.factorial(k) * coeffs[k] if k < len(coeffs) else 0.0,
            math.factorial(k) * coeffs[k] if k < len(coeffs) else 0.0,
        )
        for k in range(DERIV_TABLE_ORDER + 1)
    ]
    dcoeffs = tuple((k + 1) * coeffs[k + 1] for k in range(len(coeffs) - 1))
    nonzero = [k for k, c in enumerate(coeffs) if c != 0.0]
    if not nonzero:
        parity = "even"
    elif all(k % 2 == 0 for k in nonzero):
        parity = "even"
    elif all(k % 2 == 1 for k in nonzero):
        parity = "odd"
    else:
        parity = "neither"
    return ActivationSpec(
        name="poly:" + ",".join(repr(c) for c in coeffs),
        eval_neg=f,
        eval_pos=f,
        one_sided_derivs=_table(rows),
        declared_smoothness=math.inf,
        polynomial_degree=deg,
        params={"coeffs": coeffs},
        parity=parity,
        derivative_factory=lambda dcoeffs=dcoeffs: _poly(dcoeffs or (0.0,)),
    )


_REGISTRY = {
    "relu": _relu,
    "leakyrelu": _leakyrelu,
    "selu": _selu,
    "elu": _elu,
    "celu": _celu,
    "repu": _repu,
    "heaviside": _heaviside,
    "step": _step,
    "tanh": _tanh,
    "sigmoid": _sigmoid,
    "gelu": _gelu,
    "silu": _silu,
    "rbf": _rbf,
    "softplus": _softplus,
    "sin": _sin,
}


def registry_names():
    return sorted(_REGISTRY) + ["sk:<k>", "poly:<c0,c1,...>"]


def make_activation(name: str, **params) -> ActivationSpec:
    """Instantiate a registry activation from its identifier.

    Parametrized forms accept either suffix syntax ("repu:3", "sk:2",
    "poly:0,0,1") or keyword parameters.
    """
    key = name.lower()
    if key.startswith("sk:"):
        return reference_activation(int(key.split(":", 1)[1]))
    if key == "sk":
        return reference_activation(int(params["k"]))
    if key.startswith("poly:"):
        return _poly([float(c) for c in key.split(":", 1)[1].split(",")])
    if key == "poly":
        return _poly(params["coeffs"])
    if key.startswith("repu:"):
        return _repu(int(key.split(":", 1)[1]))
    if key in _REGISTRY:
        return _REGISTRY[key](**params)
    raise UnknownActivation(
        f"unknown activation {name!r}; known: {', '.join(registry_names())}"
    )
