"""Build NNGP and NTK kernel functions and inspect the layer recursion.

Each layer feeds the previous kernel through the dual of the activation
rescaled by the running diagonal value alpha.  On the sphere the kernels are
functions of the inner product t alone, so everything lives on [-1, 1].
"""

import numpy as np

import neural_kernels as nk

act = nk.make_activation("selu")
cfg = nk.NetworkConfig(depth=4, sigma_w2=1.0, sigma_b2=1.0, sigma_i2=1.0)

nngp = nk.build_nngp(act, cfg, backend="hermite")
ntk = nk.build_ntk(act, cfg, backend="hermite")

print("per-layer diagonal values alpha_l (selu, depth 4, all sigmas 1):")
for l, a in enumerate(nngp.trace.alpha, start=1):
    print(f"  layer {l}: {a:.6f}")

ts = np.linspace(-1.0, 1.0, 9)
print("\n t        nngp          ntk")
for t, kv, nv in zip(ts, nngp.evaluate(ts), ntk.evaluate(ts)):
    print(f"{t:+.2f}   {kv:10.6f}   {nv:10.6f}")

print("\nbias-free networks preserve activation parity:")
odd = nk.build_nngp(nk.make_activation("tanh"),
                    nk.NetworkConfig(depth=3, sigma_b2=0.0, sigma_i2=0.0),
                    backend="hermite")
print(f"  tanh kernel at +0.6: {odd.evaluate(0.6):+.8f}")
print(f"  tanh kernel at -0.6: {odd.evaluate(-0.6):+.8f}")

print("\ntwo-layer bias-free kernels split into even/odd activation parts:")
even, odd_part = nk.even_odd_parts(act)
cfg2 = nk.NetworkConfig(depth=2, sigma_b2=0.0, sigma_i2=0.0)
full = nk.build_nngp(act, cfg2, backend="hermite").evaluate(ts)
parts = (nk.build_nngp(even, cfg2, backend="hermite").evaluate(ts)
         + nk.build_nngp(odd_part, cfg2, backend="hermite").evaluate(ts))
print(f"  max |full - (even part + odd part)| = {np.max(np.abs(full - parts)):.2e}")
