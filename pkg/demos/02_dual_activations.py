"""Compare the three dual-activation backends against each other.

The dual of f maps a correlation t to E[f(u) f(v)] for unit-variance jointly
Gaussian (u, v).  The sign function s_0 = sgn(x)/2 has the closed form
1/4 - arccos(t)/(2 pi), which makes it a good oracle: the Hermite power
series (with its power-law tail completion) and the quadrant-split 2-D
quadrature should both reproduce it to high accuracy, including near the
endpoints where the kink makes naive integration slow.
"""

import numpy as np

import neural_kernels as nk

s0 = nk.reference_activation(0)
ts = np.linspace(-0.99, 0.99, 199)
closed = nk.closed_form_dual(s0)

hermite = nk.hermite_dual(s0, n_coeffs=512)
quad = nk.quadrature_dual(s0)
print("sup errors against the arccos closed form on [-0.99, 0.99]:")
print(f"  hermite series (N=512): {np.max(np.abs(hermite(ts) - closed(ts))):.2e}")
print(f"  quadrant quadrature:    {np.max(np.abs(quad(ts) - closed(ts))):.2e}")

print()
print("selected values of relu's dual (no elementary closed form needed):")
relu = nk.make_activation("relu")
d = nk.quadrature_dual(relu)
for t in (-1.0, -0.5, 0.0, 0.5, 1.0):
    print(f"  t = {t:+.1f}: {d(t):.10f}")
print(f"  value at 1 equals E[relu(X)^2] = {nk.dual_at_boundary(relu, +1):.10f}")

print()
print("derivative rule: the dual of relu' equals the derivative of relu's dual")
deriv = nk.dual_derivative(relu)
h = 1e-6
fd = (d(0.3 + h) - d(0.3 - h)) / (2 * h)
print(f"  dual_derivative(relu)(0.3) = {deriv(0.3):.10f}")
print(f"  finite difference of dual  = {fd:.10f}")
