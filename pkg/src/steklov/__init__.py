"""Orthogonal polynomials on the unit circle and sharp extremal bounds
over measures with a density floor."""

from .approximants import (
    BoundReport,
    BoundRow,
    FractionalPowerTaylor,
    build_A,
    build_B,
    fejer_kernel,
    shifted_fejer,
    trifle_integrals,
    verify_appendix_A,
)
from .construction import (
    ConditionReport,
    ConstructionError,
    ConstructionOutput,
    ConstructionParams,
    HerglotzField,
    VerificationError,
    build_construction,
    build_f_tilde,
    concatenated_measure_check,
    lower_bound_witness,
    reconstruct_sigma,
    verify_lemma_conditions,
)
from .entropy import (
    EntropyReport,
    construction_entropy,
    entropy_scaling_report,
    polynomial_entropy,
)
from .extremal import (
    SearchResult,
    gradient_at,
    search_extremal,
    small_delta_measure,
    upper_bound,
    value_at_one,
    variational_gradient,
)
from .measures import (
    CircleMeasure,
    default_grid_size,
    geronimus_insert,
    inner_product,
    inserted_norm,
    insertion_derivatives,
    lebesgue,
    rakhmanov_multi_insert,
    steklov_margin,
)
from .opuc import (
    OrthogonalSystem,
    VerblunskySequence,
    bernstein_szego_density,
    cd_kernel,
    cd_kernel_poly,
    levinson,
    monic_norm,
    szego_recursion,
    verblunsky_from_moments,
)
from .poly import star
from .specfact import FactorizationError, fejer_riesz, phase, verify_phase_bound

__version__ = "0.1.0"
