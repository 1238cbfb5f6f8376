"""Parity structure of two-layer bias-free NTK spectra on S^2.

Without biases the kernel inherits the even/odd decomposition of the
activation, and each parity decays at the rate set by its own part's
smoothness.  relu's odd part is linear, so its odd eigenvalues vanish beyond
l = 1; selu's even part (smoothness 1) decays slower than its odd part
(smoothness 2); celu shows the opposite asymmetry two orders apart.
"""

import numpy as np

import neural_kernels as nk

cfg = nk.NetworkConfig(depth=2, sigma_w2=1.0, sigma_b2=0.0, sigma_i2=0.0)

for name in ("relu", "selu", "celu"):
    act = nk.make_activation(name)
    spectrum = nk.eigenvalues(nk.build_ntk(act, cfg), d=2)
    even_max = spectrum.mu[0::2].max()
    odd_tail = np.max(spectrum.mu[3::2])
    print(f"{name}:")
    print(f"  largest odd eigenvalue beyond l=1, relative to even max: "
          f"{odd_tail / even_max:.2e}")
    for parity in ("even", "odd"):
        try:
            fit = nk.fit_decay(spectrum, parity=parity, window=(16, 128))
            print(f"  {parity} slope on l in [16, 128]: {fit.slope:+.3f}")
        except nk.InsufficientData:
            print(f"  {parity} eigenvalues are structurally zero past the head "
                  f"(finite rank)")
    for parity in ("even", "odd"):
        pred = nk.predict_exponent(act, cfg, kind="ntk", parity=parity, d=2)
        if pred.finite_rank:
            print(f"  predicted {parity}: finite rank, max degree {pred.max_degree}")
        else:
            print(f"  predicted {parity}: exponent {pred.exponent}")
    print()
