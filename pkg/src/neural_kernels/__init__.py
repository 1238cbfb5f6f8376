"""Neural kernels of deep fully connected networks on the sphere.

Builds NNGP and NTK kernel functions for piecewise-smooth activations,
extracts their eigenvalue spectra on S^d, predicts and measures spectral
decay exponents and parity structure, samples Gaussian-process paths from
spectra, and validates everything against finite-width networks.
"""

from .activations import (
    ActivationSpec,
    SmoothnessReport,
    classify,
    evaluate,
    even_odd_parts,
    make_activation,
    reference_activation,
    registry_names,
)
from .dual import (
    DualActivation,
    QuadrantRule,
    closed_form_dual,
    dual_at_boundary,
    dual_derivative,
    dual_from_hermite,
    dual_via_quadrature,
    hermite_dual,
    make_dual,
    quadrature_dual,
    rescale,
)
from .errors import (
    AmbiguousSmoothness,
    DomainError,
    InconclusiveTail,
    InsufficientData,
    NotPseudoDifferentiable,
    NTKUndefined,
    NumericalQualityError,
    QuadratureUnderResolved,
    TruncationWarning,
    UnknownActivation,
    ValidationError,
)
from .finite_width import EmpiricalKernel, MLPState, estimate, forward, init_mlp, ntk_pair
from .gp_paths import (
    PathSample,
    SobolevSeries,
    SphericalBasis,
    sample_path,
    sobolev_series,
    sobolev_threshold,
)
from .hermite import (
    GaussHermiteRule,
    HermiteSeries,
    double_factorial,
    expand,
    hermite_eval,
    s_k_coefficient,
    s_k_coefficients,
    shift_by_pseudo_derivative,
)
from .kernels import KernelFunction, LayerTrace, NetworkConfig, build_nngp, build_ntk, evaluate_kernel
from .spectrum import (
    DecayFit,
    ExponentPrediction,
    Spectrum,
    eigenvalues,
    fit_decay,
    gegenbauer_p,
    multiplicity,
    predict_exponent,
)

__version__ = "0.1.0"
