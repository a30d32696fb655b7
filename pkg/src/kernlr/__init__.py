"""Low-rank approximation of kernel matrices.

Build Gram matrices, compute optimal rank-d spectral truncations and their
entrywise/Frobenius/spectral errors, compare against randomized-projection
approximations, evaluate analytic spectra and decay-rate predictions, and
numerically verify the spectral identities and concentration phenomena that
underpin the error analysis.
"""

from .analytic import (
    DecayHypothesis,
    GaussianRbfSpectrum,
    SphereSpectrumParams,
    beta_from_upsilon,
    weighted_hermite,
    entrywise_error_rate,
    exp_tail_bound,
    exponential_decay,
    gaussian_rbf_eigenfunction,
    gaussian_rbf_eigenvalue,
    hypothesis_quantities,
    largest_tail_gap,
    poly_tail_bound,
    polynomial_decay,
    required_rank,
    sphere_decay_hypothesis,
    sphere_harmonic_count,
    tensor_spectrum,
)
from .datasets import (
    gaussian_synthetic,
    gmm_synthetic,
    load_csv,
    save_csv,
    sphere_uniform,
    subsample,
)
from .errors import CapabilityError, DegenerateDataError, EigensolverError, HypothesisError
from .kernels import (
    GramMatrix,
    KernelSpec,
    as_dataset,
    dot_product,
    evaluate,
    gram_matrix,
    matern,
    median_heuristic,
    rbf,
    standardize,
)
from .random_projection import (
    MethodComparison,
    PsdFactor,
    compare_methods,
    factor_psd,
    jl_approximation,
    jl_error_bound,
)
from .spectral import (
    EigenDecomposition,
    RankSweepResult,
    eigendecompose,
    error_sweep,
    sup_norm_tail,
    tail_abs_sum,
    truncate,
)
from .verification import (
    EntryLaw,
    MinorDecomposition,
    MinorIdentityReport,
    TailFrequencyReport,
    bernoulli,
    delocalisation_report,
    eigenvalue_deviation_report,
    interlacing_check,
    minor_decomposition,
    minor_identity_check,
    scaled,
    subspace_distance_experiment,
    uniform01,
)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "DecayHypothesis",
    "DegenerateDataError",
    "EigenDecomposition",
    "EigensolverError",
    "EntryLaw",
    "GaussianRbfSpectrum",
    "GramMatrix",
    "HypothesisError",
    "KernelSpec",
    "MethodComparison",
    "MinorDecomposition",
    "MinorIdentityReport",
    "PsdFactor",
    "RankSweepResult",
    "SphereSpectrumParams",
    "TailFrequencyReport",
    "as_dataset",
    "bernoulli",
    "beta_from_upsilon",
    "compare_methods",
    "delocalisation_report",
    "dot_product",
    "eigendecompose",
    "weighted_hermite",
    "eigenvalue_deviation_report",
    "entrywise_error_rate",
    "error_sweep",
    "evaluate",
    "exp_tail_bound",
    "exponential_decay",
    "factor_psd",
    "gaussian_rbf_eigenfunction",
    "gaussian_rbf_eigenvalue",
    "gaussian_synthetic",
    "gmm_synthetic",
    "gram_matrix",
    "hypothesis_quantities",
    "interlacing_check",
    "jl_approximation",
    "jl_error_bound",
    "largest_tail_gap",
    "load_csv",
    "matern",
    "median_heuristic",
    "minor_decomposition",
    "minor_identity_check",
    "poly_tail_bound",
    "polynomial_decay",
    "rbf",
    "required_rank",
    "save_csv",
    "scaled",
    "sphere_decay_hypothesis",
    "sphere_harmonic_count",
    "sphere_uniform",
    "standardize",
    "subsample",
    "subspace_distance_experiment",
    "sup_norm_tail",
    "tail_abs_sum",
    "tensor_spectrum",
    "truncate",
    "uniform01",
]
