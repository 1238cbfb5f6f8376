"""Walk the activation registry and print each function's smoothness structure.

The interesting quantity is the first derivative order whose one-sided limits
at zero disagree, together with the same classification applied to the even
and odd parts.  Activations with a parity-symmetric kink (like celu) have
parts of different smoothness, which later drives parity-dependent spectral
decay in bias-free networks.
"""

import math

import neural_kernels as nk

NAMES = ["relu", "leakyrelu", "selu", "elu", "celu", "repu:2", "repu:3",
         "heaviside", "tanh", "sigmoid", "gelu", "silu", "rbf", "softplus"]


def fmt(smoothness, degree):
    if degree is not None:
        tag = "zero" if degree == -math.inf else f"poly(deg {int(degree)})"
        return tag
    return "inf" if smoothness == math.inf else str(smoothness)


print(f"{'activation':<12} {'smoothness':<11} {'even part':<14} {'odd part':<14} parity")
print("-" * 64)
for name in NAMES:
    act = nk.make_activation(name)
    r = nk.classify(act)
    print(
        f"{name:<12} {fmt(r.smoothness, None):<11} "
        f"{fmt(r.even_smoothness, r.even_polynomial_degree):<14} "
        f"{fmt(r.odd_smoothness, r.odd_polynomial_degree):<14} {r.parity}"
    )

print()
print("jump coefficients of celu (first nonzero one sets the smoothness):")
print("  ", list(nk.classify(nk.make_activation("celu")).deltas))
