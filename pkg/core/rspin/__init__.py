"""r-Airy 关联子与 r-spin 相交数。"""
from .checks import deformation_check, string_check, tables_by_genus
from .intersections import (
    IntersectionTable,
    extract_intersections,
    insertion_text,
    intersection_numbers,
    laurent_terms,
    omega_int,
    selection_rule,
)
from .times import LambdaField, TimesVector, c_coeff, constraint_check, times_from_field, zero_times

__all__ = [
    "IntersectionTable",
    "LambdaField",
    "TimesVector",
    "c_coeff",
    "constraint_check",
    "deformation_check",
    "extract_intersections",
    "insertion_text",
    "intersection_numbers",
    "laurent_terms",
    "omega_int",
    "selection_rule",
    "string_check",
    "tables_by_genus",
    "times_from_field",
    "zero_times",
]
