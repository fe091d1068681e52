"""Jet calculus on finite point clouds.

Symmetric multilinear forms, Lip(gamma) jet families with exact norm
computation, the explicit constants behind the nesting and sandwich
estimates, delta-cover construction, and certificate checking.
"""

from .tensor_core import SymForm, apply_form, contract, op_norm
from .jets import (
    LipFunction,
    level_count,
    NormReport,
    remainder,
    truncated_remainder,
    lip_norm,
    proposal_eval,
    holder_estimate_check,
    diff,
    scale,
    truncate,
    restrict,
)
from .bounds import (
    BoundQuery,
    SandwichConstants,
    BoundReport,
    g_const,
    h_const,
    remainder_bound,
    nesting_factor,
    growth_bounds,
    local_bound_I,
    e_sequence,
    delta_star,
    local_bound_II,
    delta0_pointwise,
    delta0_single_point,
    sandwich_constants,
)
from .covering import (
    CoverPlan,
    CubeBound,
    is_cover,
    greedy_cover,
    greedy_packing,
    cube_bound,
    diameter,
)
from .sandwich import (
    Certificate,
    Plan,
    certify_pointwise,
    certify_single_point,
    certify_full,
    plan_approximation,
    counterexample,
)

__version__ = "0.1.0"

__all__ = [
    "SymForm",
    "apply_form",
    "contract",
    "op_norm",
    "LipFunction",
    "level_count",
    "NormReport",
    "remainder",
    "truncated_remainder",
    "lip_norm",
    "proposal_eval",
    "holder_estimate_check",
    "diff",
    "scale",
    "truncate",
    "restrict",
    "BoundQuery",
    "SandwichConstants",
    "BoundReport",
    "g_const",
    "h_const",
    "remainder_bound",
    "nesting_factor",
    "growth_bounds",
    "local_bound_I",
    "e_sequence",
    "delta_star",
    "local_bound_II",
    "delta0_pointwise",
    "delta0_single_point",
    "sandwich_constants",
    "CoverPlan",
    "CubeBound",
    "is_cover",
    "greedy_cover",
    "greedy_packing",
    "cube_bound",
    "diameter",
    "Certificate",
    "Plan",
    "certify_pointwise",
    "certify_single_point",
    "certify_full",
    "plan_approximation",
    "counterexample",
]
