"""Exact-arithmetic toolkit for radial convolution operators on free groups.

Words and spheres, the exact radial convolution algebra, discrete
Lorentz norms, truncated convolution operators with set-search norm
estimators, and composite verifiers that certify the weak-type operator
norm bounds at desk scale.
"""

from .errors import BudgetExceededError
from .lorentz import (
    LorentzIndex,
    Rearrangement,
    lorentz_norm,
    radial_weighted_sum,
    rearrange,
    rearrange_radial,
    weak_norm,
)
from .operators import (
    ElementSet,
    FunctionOnGroup,
    SetFamily,
    ball_set,
    best_F_ratio,
    candidate_sets,
    column_l1_sup,
    default_radius,
    embed,
    explicit_set,
    left_convolve,
    pairing,
    q_alpha_sweep,
    restricted_weak_estimate,
    sphere_set,
    truncated_column,
    weak_estimate_21_to_2,
)
from .radial import (
    RadialFunction,
    a_functional,
    a_functional_parts,
    chi,
    conjecture_functional,
    convolve_radial,
    format_radial_literal,
    oracle_convolve,
    paper_display_coefficient,
    parse_radial_literal,
    structure_constant,
)
from .theorems import (
    VerificationReport,
    build_thm1_suite,
    conjecture_scan,
    sample_radial,
    thm3_equivalence_report,
    thm4_lower_chain,
    thm5_exponent_fit,
    verify_display_majorization,
    verify_lemma1,
    verify_p_columns,
    verify_q_columns,
    verify_r22,
    verify_thm1,
)
from .words import (
    PAIR_BUDGET,
    SPHERE_CAP,
    FreeGroupCtx,
    ReducedWord,
    ball_size,
    ball_stream,
    identity,
    inverse,
    mul,
    normalize,
    sphere_size,
    sphere_stream,
    word_from_str,
    word_to_str,
)

__version__ = "0.1.0"
