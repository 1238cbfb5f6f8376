import numpy as np
import pytest

import neural_kernels as nk

# activations whose duals and kernels the property suites sweep
REGISTRY_SAMPLE = [
    "relu",
    "leakyrelu",
    "selu",
    "elu",
    "celu",
    "repu:2",
    "repu:3",
    "heaviside",
    "tanh",
    "sigmoid",
    "gelu",
    "silu",
    "rbf",
    "softplus",
    "sin",
    "sk:0",
    "sk:1",
    "sk:2",
]


@pytest.fixture(scope="session")
def registry_acts():
    return {name: nk.make_activation(name) for name in REGISTRY_SAMPLE}


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
