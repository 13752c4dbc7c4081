"""组合模型的谱曲线：Q、ξ_j、y，以及分支点和 deck 变换。"""
from .branch import Branchpoint, branchpoints, deck_check, deck_local, global_decks
from .loops import (
    curve_invariants_check,
    disc_cylinder_loop_check,
    omega01_check,
    omega02_check,
    sheet_sum,
    y_rational,
)
from .spectral import (
    ShiftedCurve,
    SpectralCurve,
    alpha_unit,
    curve_model,
    lambda_groups,
    omega01,
    omega02,
    shifted_curve,
    solve_curve,
    vanishes_at_infinity,
    y_at,
    zeta_coeffs,
    zeta_of_z,
)

__all__ = [
    "Branchpoint",
    "ShiftedCurve",
    "SpectralCurve",
    "alpha_unit",
    "branchpoints",
    "curve_invariants_check",
    "curve_model",
    "deck_check",
    "deck_local",
    "disc_cylinder_loop_check",
    "global_decks",
    "lambda_groups",
    "omega01",
    "omega01_check",
    "omega02",
    "omega02_check",
    "shifted_curve",
    "sheet_sum",
    "solve_curve",
    "vanishes_at_infinity",
    "y_at",
    "y_rational",
    "zeta_coeffs",
    "zeta_of_z",
]
