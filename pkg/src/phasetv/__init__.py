"""Total variation denoising of circle-valued signals and images.

Data lives on the unit circle, represented by canonical angles in
[-pi, pi).  The solver minimizes a geodesic data-fidelity term plus
first/second order cyclic difference penalties with a cyclic proximal
point algorithm built from closed-form proximal mappings.
"""

from .cyclic import (
    B1,
    B2,
    B11,
    DifferenceWeight,
    abs_cyclic_diff_closed,
    abs_cyclic_diff_general,
    canonical_image,
    canonical_signal,
    delta,
    geodesic_distance,
    wrap,
)
from .lifting import (
    ConvergenceCheck,
    LiftedImage,
    check_convergence_conditions,
    d_inf_between,
    d_inf_neighbors,
    energy_2d_unwrapped,
    lift,
)
from .prox import (
    ProxConfig,
    ProxResult,
    brute_force_prox,
    cyclic_prox_objective,
    prox_cyclic_diff,
    prox_data_sq,
    prox_linear_abs_real,
    prox_linear_sq_real,
)
from .solver import (
    Params1D,
    Params2D,
    SolveReport,
    cppa_denoise_1d,
    cppa_denoise_2d,
    energy_1d,
    energy_2d,
    split_terms_1d,
    split_terms_2d,
    tv_components_1d,
    tv_components_2d,
)
from .synth import (
    NoiseSpec,
    add_wrapped_gaussian,
    cmse,
    splitmix64,
    standard_normal_stream,
    synth_signal_1d,
    synth_surface_2d,
)

__all__ = [
    "B1",
    "B2",
    "B11",
    "ConvergenceCheck",
    "DifferenceWeight",
    "LiftedImage",
    "NoiseSpec",
    "Params1D",
    "Params2D",
    "ProxConfig",
    "ProxResult",
    "SolveReport",
    "abs_cyclic_diff_closed",
    "abs_cyclic_diff_general",
    "add_wrapped_gaussian",
    "brute_force_prox",
    "canonical_image",
    "canonical_signal",
    "check_convergence_conditions",
    "cmse",
    "cppa_denoise_1d",
    "cppa_denoise_2d",
    "cyclic_prox_objective",
    "d_inf_between",
    "d_inf_neighbors",
    "delta",
    "energy_1d",
    "energy_2d",
    "energy_2d_unwrapped",
    "geodesic_distance",
    "lift",
    "prox_cyclic_diff",
    "prox_data_sq",
    "prox_linear_abs_real",
    "prox_linear_sq_real",
    "split_terms_1d",
    "split_terms_2d",
    "splitmix64",
    "standard_normal_stream",
    "synth_signal_1d",
    "synth_surface_2d",
    "tv_components_1d",
    "tv_components_2d",
    "wrap",
]

__version__ = "0.1.0"
