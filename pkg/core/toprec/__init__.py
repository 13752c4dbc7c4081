"""谱曲线上的拓扑递归：简单分支点形式、r-Airy 曲线的局部高阶形式、ε 形变族与各项校验。"""
from .checks import (
    P_polynomial,
    SheetTower,
    check_H,
    check_P,
    check_PH_equivalence,
    correlator_check,
    loop_check_linear,
    loop_check_quadratic,
    tutte_check,
)
from .correlator import Correlator, CorrelatorTable, bergman
from .epsilon import (
    epsilon_curve,
    epsilon_family,
    epsilon_model,
    from_phi_basis,
    limit_eps0,
    phi_basis,
    phi_to_dict,
    primitive,
    rairy_curve,
    to_phi_basis,
)
from .higher import HigherRecursion, higher_recursion, higher_tr_step, is_monomial
from .operators import E_operator, R_operator, compositions, partition_terms
from .recursion import TopologicalRecursion, topological_recursion, tr_step

__all__ = [
    "Correlator",
    "CorrelatorTable",
    "E_operator",
    "HigherRecursion",
    "P_polynomial",
    "R_operator",
    "SheetTower",
    "TopologicalRecursion",
    "bergman",
    "check_H",
    "check_P",
    "check_PH_equivalence",
    "compositions",
    "correlator_check",
    "epsilon_curve",
    "epsilon_family",
    "epsilon_model",
    "from_phi_basis",
    "higher_recursion",
    "higher_tr_step",
    "is_monomial",
    "limit_eps0",
    "loop_check_linear",
    "loop_check_quadratic",
    "partition_terms",
    "phi_basis",
    "phi_to_dict",
    "primitive",
    "rairy_curve",
    "tr_step",
    "to_phi_basis",
    "topological_recursion",
    "tutte_check",
]
