"""Check the analytic kernels against finite-width networks by Monte Carlo.

Networks in tangent parametrization converge to the NNGP (output covariance)
and NTK (parameter-gradient inner products) as width grows.  At width 1024
the agreement over random point pairs on the circle is already within a few
standard errors.
"""

import numpy as np

import neural_kernels as nk

act = nk.make_activation("relu")
cfg = nk.NetworkConfig(depth=2, sigma_w2=1.0, sigma_b2=1.0, sigma_i2=1.0)

rng = np.random.default_rng(7)
angles = rng.uniform(0, 2 * np.pi, size=(5, 2))
pairs = [(np.array([np.cos(a), np.sin(a)]), np.array([np.cos(b), np.sin(b)]))
         for a, b in angles]

results = nk.estimate(act, cfg, pairs, width=1024, n_samples=500, seed=123)
nngp = nk.build_nngp(act, cfg, backend="hermite")
ntk = nk.build_ntk(act, cfg, backend="hermite")

print(f"{'t':>6} {'nngp mc':>10} {'nngp exact':>11} {'z':>6}   "
      f"{'ntk mc':>10} {'ntk exact':>10} {'z':>6}")
for res in results:
    zk = (res.nngp_mean - nngp.evaluate(res.t)) / res.nngp_se
    zn = (res.ntk_mean - ntk.evaluate(res.t)) / res.ntk_se
    print(f"{res.t:+.3f} {res.nngp_mean:10.4f} {nngp.evaluate(res.t):11.4f} {zk:+6.2f}   "
          f"{res.ntk_mean:10.4f} {ntk.evaluate(res.t):10.4f} {zn:+6.2f}")

print()
print("width sweep at depth 3 with the square activation (two-layer")
print("estimators are exactly unbiased, so a genuine width bias only appears")
print("from three layers on, and x^2 makes it large enough to see):")
sq = nk.make_activation("repu:2")
cfg3 = nk.NetworkConfig(depth=3, sigma_w2=1.0, sigma_b2=1.0, sigma_i2=1.0)
nngp3 = nk.build_nngp(sq, cfg3, backend="hermite")
pair = [pairs[0]]
exact = nngp3.evaluate(pair[0][0] @ pair[0][1])
for width in (2, 8, 64, 256):
    res = nk.estimate(sq, cfg3, pair, width=width, n_samples=4000, seed=5,
                      with_ntk=False)[0]
    print(f"  width {width:>5}: |error| = {abs(res.nngp_mean - exact):9.4f} "
          f"(se {res.nngp_se:.4f})")
