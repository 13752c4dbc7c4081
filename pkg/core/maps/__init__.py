"""广义 Kontsevich 图的枚举与权重。"""
from .census import brute_coefficient, brute_series, decorated_rooted, enumerate_maps, minimal_degree, signature_counts
from .family import FamilySpec, VertexType, black_degree_multisets, vertex_pools
from .generate import RawMap, RootedGenerator, decorations, rooted_maps
from .identities import cut_vertex_check, derivative_checks, tadpole_check
from .ribbon import INFINITY_DECORATION, RibbonMap
from .weights import WeightEvaluator, complete_homogeneous, map_weight, propagator, square_weight, vertex_weight

__all__ = [
    "FamilySpec",
    "INFINITY_DECORATION",
    "RawMap",
    "RibbonMap",
    "RootedGenerator",
    "VertexType",
    "WeightEvaluator",
    "black_degree_multisets",
    "brute_coefficient",
    "brute_series",
    "complete_homogeneous",
    "cut_vertex_check",
    "decorated_rooted",
    "decorations",
    "derivative_checks",
    "enumerate_maps",
    "map_weight",
    "minimal_degree",
    "propagator",
    "rooted_maps",
    "signature_counts",
    "square_weight",
    "tadpole_check",
    "vertex_pools",
    "vertex_weight",
]
