from .fields import (
    FieldTower,
    QuotientElement,
    QuotientRing,
    cyclotomic_ring,
    cyclotomic_sum_powers,
    rational_ring,
    root_multiplicities,
    root_rings,
    sqrt_ring,
)
from .local import (
    INFINITY,
    LocalSeries,
    coordinate,
    evaluate_univariate,
    expand_rational,
    residue_at,
    residue_of_rational,
    series_compose,
    series_reversion,
)
from .partial import PartialFractions, partial_fractions
from .rational import (
    SymbolSpace,
    canonical,
    coefficient,
    degree_in,
    depends_on,
    derivative,
    evaluate_poly,
    format_scalar,
    gen_of,
    is_polynomial_in,
    poly_divmod,
    polynomial_part,
    rename,
    rf_equal,
    rf_from_json,
    rf_normalize,
    rf_to_json,
    rf_to_text,
    split_in,
    substitute,
    symbol_names,
    to_scalar,
    univariate_coeffs,
    used_symbols,
)
from .series import AlphaSeries, LaurentSeries, alpha_from_rational, divide_series, series_substitute

__all__ = [
    "AlphaSeries",
    "FieldTower",
    "INFINITY",
    "LaurentSeries",
    "LocalSeries",
    "PartialFractions",
    "QuotientElement",
    "QuotientRing",
    "SymbolSpace",
    "alpha_from_rational",
    "canonical",
    "coefficient",
    "coordinate",
    "cyclotomic_ring",
    "cyclotomic_sum_powers",
    "degree_in",
    "depends_on",
    "derivative",
    "divide_series",
    "evaluate_poly",
    "evaluate_univariate",
    "expand_rational",
    "format_scalar",
    "gen_of",
    "is_polynomial_in",
    "partial_fractions",
    "poly_divmod",
    "polynomial_part",
    "rational_ring",
    "rename",
    "residue_at",
    "residue_of_rational",
    "rf_equal",
    "rf_from_json",
    "rf_normalize",
    "rf_to_json",
    "rf_to_text",
    "root_multiplicities",
    "root_rings",
    "series_compose",
    "series_reversion",
    "series_substitute",
    "split_in",
    "sqrt_ring",
    "substitute",
    "symbol_names",
    "to_scalar",
    "univariate_coeffs",
    "used_symbols",
]
