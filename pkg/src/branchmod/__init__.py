"""Generic semimodules of plane branches, their blow-ups and moduli dimensions."""
from .apery import (
    AperyTable,
    CofiniteSet,
    Semimodule,
    apery_orders,
    cofinite_diff_count,
    semimodule,
    singular_semimodule,
)
from .blowup import (
    SuitableState,
    Trajectory,
    blow_up_fixed_x,
    fanning_exponent,
    sliding_divisors,
    suitabilize,
    trajectory,
    variation_exponents,
)
from .branch import (
    PairClass,
    derive_invariants,
    exponent_ladder,
    make_pair,
    next_exponent,
    parse_class,
    prev_exponent,
    validate_pair,
)
from .moduli import (
    DimensionReport,
    blowup_step_difference,
    dimension_report,
    genzmer_dimension,
    geometric_dimension,
    parallel_shift_semimodule,
    sigma,
    theta_increments,
)

__version__ = "0.1.0"
