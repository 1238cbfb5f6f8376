"""Sample Gaussian-process paths from a kernel spectrum and locate the
Sobolev smoothness threshold of the process.

For the two-layer relu NNGP with biases on the circle, the expected squared
H^r norm series converges for r below 1.5 and diverges above it: sample
paths sit just under H^{1.5}.  The verdicts come from the fitted exponent of
the series increments, and a bisection recovers the threshold.
"""

import numpy as np

import neural_kernels as nk

kernel = nk.build_nngp(nk.make_activation("relu"), nk.NetworkConfig(depth=2))
spectrum = nk.eigenvalues(kernel, d=1)

print("Sobolev-norm series verdicts for the relu NNGP on S^1:")
for r in (1.0, 1.25, 1.5, 1.75, 2.0):
    series = nk.sobolev_series(spectrum, r)
    print(f"  r = {r:<4}: {series.verdict:<12} (tail exponent {series.tail_exponent:+.3f})")

threshold = nk.sobolev_threshold(spectrum)
print(f"bisection threshold: {threshold:.3f} (smoothness order of the paths)")

print()
print("three sample paths evaluated at eight points on the circle:")
basis = nk.SphericalBasis(d=1, l_max=spectrum.l_max)
theta = np.linspace(0, 2 * np.pi, 8, endpoint=False)
points = np.stack([np.cos(theta), np.sin(theta)], axis=1)
for seed in (1, 2, 3):
    path = nk.sample_path(spectrum, basis, seed=seed)
    values = " ".join(f"{v:+.3f}" for v in path(points))
    print(f"  seed {seed}: {values}")
