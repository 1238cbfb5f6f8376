"""Measure spectral decay of neural kernels on S^2 and compare to predictions.

A kernel whose activation has a single non-smoothness of order s at zero
decays like mu_l ~ (l+1)^(-d-2s-1) for the NNGP and (l+1)^(-d-2s+1) for the
NTK (with biases).  relu has s=1 and celu s=2, so on S^2 the four fitted
slopes should land near -5/-3 and -7/-5.
"""

import neural_kernels as nk

D = 2
cfg = nk.NetworkConfig(depth=3, sigma_w2=1.0, sigma_b2=1.0, sigma_i2=1.0)

print(f"{'kernel':<14} {'fitted slope':>13} {'predicted':>10}")
print("-" * 40)
for name in ("relu", "celu"):
    act = nk.make_activation(name)
    for kind, builder in (("nngp", nk.build_nngp), ("ntk", nk.build_ntk)):
        kernel = builder(act, cfg)
        spectrum = nk.eigenvalues(kernel, d=D)
        fit = nk.fit_decay(spectrum, parity="all", window=(16, 128))
        pred = nk.predict_exponent(act, cfg, kind=kind, parity="all", d=D)
        print(f"{name}/{kind:<9} {fit.slope:>13.3f} {pred.exponent:>10.1f}")

print()
print("polynomial activations instead have finitely many eigenvalues:")
sq = nk.make_activation("poly:0,0,1")
for depth in (2, 3):
    kernel = nk.build_nngp(sq, nk.NetworkConfig(depth=depth))
    spectrum = nk.eigenvalues(kernel, d=D, l_max=16, n_quad=100)
    pred = nk.predict_exponent(sq, nk.NetworkConfig(depth=depth), "nngp", "even", d=D)
    nonzero = [l for l, mu in enumerate(spectrum.mu) if mu > 1e-10 * spectrum.mu[0]]
    print(f"  x^2, depth {depth}: nonzero eigenvalues at l = {nonzero} "
          f"(predicted cap {pred.max_degree})")
