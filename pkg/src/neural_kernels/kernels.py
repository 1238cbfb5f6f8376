"""NNGP and NTK kernel functions on [-1, 1] via the layer recursion.

With alpha_l the diagonal value kappa_nngp_l(1), the recursion reads

    kappa_nngp_1(t) = sb2 si2 + sw2 t
    kappa_nngp_l(t) = sb2 si2 + sw2 * dual(f scaled by sqrt(alpha_{l-1}))(kappa_nngp_{l-1}(t) / alpha_{l-1})
    kappa_ntk_1(t)  = sb2 (1 - si2) + kappa_nngp_1(t)
    kappa_ntk_l(t)  = sb2 (1 - si2) + kappa_nngp_l(t)
                      + sw2 * kappa_ntk_{l-1}(t) * dual(f' scaled by sqrt(alpha_{l-1}))(kappa_nngp_{l-1}(t) / alpha_{l-1})

The normalization constants alpha_l are computed by 1-D split quadrature of
E[f(sqrt(alpha) X)^2] rather than through the dual evaluators, so they do not
inherit any interpolation error from the dual backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .activations import ActivationSpec, evaluate
from .dual import DualActivation, QuadrantRule, make_dual, rescale
from .errors import DomainError, NotPseudoDifferentiable
from .hermite import default_rule

ARG_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class NetworkConfig:
    """Depth and initialization variances of the fully connected network."""

    depth: int
    sigma_w2: float = 1.0
    sigma_b2: float = 1.0
    sigma_i2: float = 1.0

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if self.sigma_w2 <= 0:
            raise ValueError("sigma_w2 must be > 0")
        if self.sigma_b2 < 0 or self.sigma_i2 < 0:
            raise ValueError("sigma_b2 and sigma_i2 must be >= 0")


@dataclass(frozen=True)
class LayerTrace:
    """Per-layer diagonal values and the dual evaluators feeding each layer."""

    alpha: tuple
    duals: tuple
    deriv_duals: tuple = ()


@dataclass(frozen=True)
class KernelFunction:
    """A dot-product kernel kappa: [-1,1] -> R with its construction trace."""

    kind: str
    act: Optional[ActivationSpec]
    cfg: NetworkConfig
    trace: LayerTrace
    backend: str = "quadrature"

    def __call__(self, ts):
        return self.evaluate(ts)

    @property
    def value_at_one(self) -> float:
        return float(self.evaluate(np.array([1.0]))[0])

    def evaluate(self, ts):
        """Pointwise kernel values; arguments must lie in [-1, 1]."""
        ts_arr = np.atleast_1d(np.asarray(ts, dtype=float))
        if np.any(np.abs(ts_arr) > 1.0 + ARG_CLAMP_TOL):
            raise DomainError("kernel arguments must lie in [-1, 1]")
        ts_arr = np.clip(ts_arr, -1.0, 1.0)
        cfg = self.cfg
        const = cfg.sigma_b2 * cfg.sigma_i2
        nngp = const + cfg.sigma_w2 * ts_arr
        ntk = cfg.sigma_b2 * (1.0 - cfg.sigma_i2) + nngp
        for l in range(2, cfg.depth + 1):
            arg = np.clip(nngp / self.trace.alpha[l - 2], -1.0, 1.0)
            nngp_next = const + cfg.sigma_w2 * self.trace.duals[l - 2](arg)
            if self.kind == "ntk":
                ntk = (
                    cfg.sigma_b2 * (1.0 - cfg.sigma_i2)
                    + nngp_next
                    + cfg.sigma_w2 * ntk * self.trace.deriv_duals[l - 2](arg)
                )
            nngp = nngp_next
        out = nngp if self.kind == "nngp" else ntk
        return float(out[0]) if np.ndim(ts) == 0 else out


def _alpha_sequence(act: ActivationSpec, cfg: NetworkConfig):
    """alpha_1..alpha_L by split quadrature of the diagonal second moments."""
    rule = default_rule()
    const = cfg.sigma_b2 * cfg.sigma_i2
    alphas = [const + cfg.sigma_w2]
    for _ in range(2, cfg.depth + 1):
        scale = math.sqrt(alphas[-1])
        second_moment = rule.integrate(evaluate(act, scale * rule.nodes) ** 2)
        alphas.append(const + cfg.sigma_w2 * second_moment)
    return alphas


def _build(act: ActivationSpec, cfg: NetworkConfig, kind: str, backend: str,
           n_coeffs: int, quad_rule: Optional[QuadrantRule]) -> KernelFunction:
    alphas = _alpha_sequence(act, cfg)
    if any(not (a > 0) or not math.isfinite(a) for a in alphas):
        raise ArithmeticError(f"layer normalization broke down: alpha = {alphas}")
    duals = []
    deriv_duals = []
    deriv_act = act.derivative() if kind == "ntk" else None
    for l in range(2, cfg.depth + 1):
        scale = math.sqrt(alphas[l - 2])
        duals.append(
            make_dual(rescale(act, scale), backend=backend, n_coeffs=n_coeffs,
                      quad_rule=quad_rule)
        )
        if kind == "ntk":
            deriv_duals.append(
                make_dual(rescale(deriv_act, scale), backend=backend,
                          n_coeffs=n_coeffs, quad_rule=quad_rule)
            )
    trace = LayerTrace(alpha=tuple(alphas), duals=tuple(duals),
                       deriv_duals=tuple(deriv_duals))
    return KernelFunction(kind=kind, act=act, cfg=cfg, trace=trace, backend=backend)


def build_nngp(act: ActivationSpec, cfg: NetworkConfig, backend: str = "quadrature",
               n_coeffs: int = 512, quad_rule: Optional[QuadrantRule] = None) -> KernelFunction:
    """NNGP kernel function of the configured network."""
    return _build(act, cfg, "nngp", backend, n_coeffs, quad_rule)


def build_ntk(act: ActivationSpec, cfg: NetworkConfig, backend: str = "quadrature",
              n_coeffs: int = 512, quad_rule: Optional[QuadrantRule] = None) -> KernelFunction:
    """NTK kernel function; requires a pseudo-differentiable activation."""
    if act.is_discontinuous():
        raise NotPseudoDifferentiable(
            f"the NTK of a network with discontinuous activation {act.name!r} is undefined"
        )
    return _build(act, cfg, "ntk", backend, n_coeffs, quad_rule)


def evaluate_kernel(kernel: KernelFunction, ts):
    """Pointwise evaluation (grid form of KernelFunction.evaluate)."""
    return kernel.evaluate(ts)
