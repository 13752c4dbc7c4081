"""由 Tutte 方程逐阶计算 W、H、U 生成级数。"""
from .disc import disc_init, disc_series, disc_step
from .generic import closure, dependencies, generic_series, generic_step
from .poles import pole_structure_check, symmetry_check
from .relations import H_from_U, h_structure_check, relation_residues_U, relation_S_from_W, relation_W_from_F
from .solve import fill, solve_table
from .square import series_U, square_step
from .table import SeriesTable, lowest_order, place

__all__ = [
    "H_from_U",
    "SeriesTable",
    "closure",
    "dependencies",
    "disc_init",
    "disc_series",
    "disc_step",
    "fill",
    "generic_series",
    "generic_step",
    "h_structure_check",
    "lowest_order",
    "place",
    "pole_structure_check",
    "relation_S_from_W",
    "relation_W_from_F",
    "relation_residues_U",
    "series_U",
    "solve_table",
    "square_step",
    "symmetry_check",
]
