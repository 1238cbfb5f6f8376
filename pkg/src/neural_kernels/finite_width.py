"""Monte-Carlo validation of the analytic kernels against finite-width networks.

Networks follow the tangent parametrization: the first layer is scaled by
sigma_w alone (inputs live on the sphere), deeper layers by sigma_w/sqrt(fan-in),
biases enter as sigma_b * b with b ~ N(0, sigma_i^2).  The empirical NNGP for
a point pair is the product of outputs averaged over independent
initializations; the empirical NTK is the exact parameter-gradient inner
product, computed by manual reverse accumulation (the architecture is a fixed
MLP, so the gradients are short and auditable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .activations import ActivationSpec, evaluate
from .errors import NotPseudoDifferentiable
from .kernels import NetworkConfig


@dataclass(frozen=True)
class MLPState:
    """Frozen parameters of one finite-width network realization."""

    cfg: NetworkConfig
    act: ActivationSpec
    widths: tuple
    weights: tuple
    biases: tuple

    @property
    def depth(self) -> int:
        return self.cfg.depth


def init_mlp(act: ActivationSpec, cfg: NetworkConfig, d_in: int, width: int,
             rng: np.random.Generator) -> MLPState:
    """Draw one network: W entries N(0,1), biases N(0, sigma_i^2)."""
    if width < 1:
        raise ValueError("width must be >= 1")
    widths = (d_in,) + (width,) * (cfg.depth - 1) + (1,)
    weights = []
    biases = []
    sigma_i = math.sqrt(cfg.sigma_i2)
    for l in range(1, cfg.depth + 1):
        weights.append(rng.standard_normal((widths[l], widths[l - 1])))
        biases.append(sigma_i * rng.standard_normal(widths[l]))
    return MLPState(cfg=cfg, act=act, widths=widths,
                    weights=tuple(weights), biases=tuple(biases))


def _layer_scales(state: MLPState):
    # first layer has no fan-in normalization (inputs are unit vectors)
    sw = math.sqrt(state.cfg.sigma_w2)
    return [sw] + [sw / math.sqrt(state.widths[l - 1]) for l in range(2, state.depth + 1)]


def forward(state: MLPState, x: np.ndarray):
    """Outputs and pre-activation trace for a batch of inputs (d_in, m)."""
    x = np.atleast_2d(np.asarray(x, float))
    if x.shape[0] != state.widths[0]:
        x = x.T
    sb = math.sqrt(state.cfg.sigma_b2)
    scales = _layer_scales(state)
    pre = []
    h = x
    for l in range(state.depth):
        z = scales[l] * state.weights[l] @ h + sb * state.biases[l][:, None]
        pre.append(z)
        if l < state.depth - 1:
            h = evaluate(state.act, z)
    return pre[-1], pre


def _deltas(state: MLPState, pre, dact: ActivationSpec):
    """Gradients of the scalar output w.r.t. each pre-activation layer."""
    scales = _layer_scales(state)
    m = pre[-1].shape[1]
    deltas = [None] * state.depth
    deltas[-1] = np.ones((1, m))
    for l in range(state.depth - 2, -1, -1):
        upstream = scales[l + 1] * state.weights[l + 1].T @ deltas[l + 1]
        deltas[l] = upstream * evaluate(dact, pre[l], at_zero="left")
    return deltas


def ntk_pair(state: MLPState, x: np.ndarray, x_bar: np.ndarray) -> float:
    """Exact parameter-gradient inner product for one input pair."""
    values = ntk_pairs(state, np.stack([x, x_bar], axis=1), [(0, 1)])
    return float(values[0])


def ntk_pairs(state: MLPState, points: np.ndarray, pairs) -> np.ndarray:
    """NTK entries <grad z(x_a), grad z(x_b)> for listed column pairs of points."""
    if state.act.is_discontinuous():
        raise NotPseudoDifferentiable(
            f"empirical NTK undefined for discontinuous activation {state.act.name!r}"
        )
    dact = state.act.derivative()
    points = np.atleast_2d(np.asarray(points, float))
    _, pre = forward(state, points)
    deltas = _deltas(state, pre, dact)
    scales = _layer_scales(state)
    acts = [points] + [evaluate(state.act, z) for z in pre[:-1]]
    out = np.zeros(len(pairs))
    for j, (a, b) in enumerate(pairs):
        total = 0.0
        for l in range(state.depth):
            dd = float(deltas[l][:, a] @ deltas[l][:, b])
            xx = float(acts[l][:, a] @ acts[l][:, b])
            total += scales[l] ** 2 * dd * xx + state.cfg.sigma_b2 * dd
        out[j] = total
    return out


@dataclass(frozen=True)
class EmpiricalKernel:
    """Monte-Carlo kernel estimates for one point pair."""

    t: float
    n_samples: int
    nngp_mean: float
    nngp_se: float
    ntk_mean: float
    ntk_se: float

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "n_samples": self.n_samples,
            "nngp_mean": self.nngp_mean,
            "nngp_se": self.nngp_se,
            "ntk_mean": self.ntk_mean,
            "ntk_se": self.ntk_se,
        }


def estimate(act: ActivationSpec, cfg: NetworkConfig, pairs, width: int,
             n_samples: int, seed: int, with_ntk: bool = True):
    """Per-pair Monte-Carlo means and standard errors over initializations.

    ``pairs`` is a sequence of (x, x_bar) unit vectors.  Sampling is
    deterministic given the seed: every initialization uses its own child of
    the master seed sequence, and accumulation happens in fixed order via
    numpy's pairwise summation.
    """
    pairs = [(np.asarray(a, float), np.asarray(b, float)) for a, b in pairs]
    d_in = pairs[0][0].size
    points = np.stack([p for pair in pairs for p in pair], axis=1)
    index_pairs = [(2 * j, 2 * j + 1) for j in range(len(pairs))]
    children = np.random.SeedSequence(seed).spawn(n_samples)
    nngp_samples = np.empty((n_samples, len(pairs)))
    ntk_samples = np.empty((n_samples, len(pairs))) if with_ntk else None
    for s, child in enumerate(children):
        state = init_mlp(act, cfg, d_in, width, np.random.Generator(np.random.Philox(child)))
        output, _ = forward(state, points)
        for j, (a, b) in enumerate(index_pairs):
            nngp_samples[s, j] = output[0, a] * output[0, b]
        if with_ntk:
            ntk_samples[s] = ntk_pairs(state, points, index_pairs)
    results = []
    root_n = math.sqrt(n_samples)
    for j, (a, b) in enumerate(pairs):
        nngp_mean = float(np.mean(nngp_samples[:, j]))
        nngp_se = float(np.std(nngp_samples[:, j], ddof=1) / root_n)
        if with_ntk:
            ntk_mean = float(np.mean(ntk_samples[:, j]))
            ntk_se = float(np.std(ntk_samples[:, j], ddof=1) / root_n)
        else:
            ntk_mean = ntk_se = float("nan")
        results.append(
            EmpiricalKernel(
                t=float(a @ b),
                n_samples=n_samples,
                nngp_mean=nngp_mean,
                nngp_se=nngp_se,
                ntk_mean=ntk_mean,
                ntk_se=ntk_se,
            )
        )
    return results
