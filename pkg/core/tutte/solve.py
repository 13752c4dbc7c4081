from typing import Iterable, Tuple

from ..log import LOG_TAG, logger
from ..model import Model
from .generic import closure, generic_series
from .square import series_U
from .table import SeriesTable


def fill(table: SeriesTable, topologies: Iterable[Tuple[int, int]], with_square: bool = False) -> SeriesTable:
    """按 2g+n、再按 δ 的顺序把目标拓扑及其前置拓扑填到截断阶。"""
    order = closure(topologies)
    for g, n in order:
        generic_series(table, g, n)
        if with_square:
            series_U(table, g, n)
    logger.info(f"{LOG_TAG} Tutte 方程求解完成：{len(order)} 个拓扑，截断 α̂^{table.order}")
    return table


def solve_table(model: Model, order: int, topologies: Iterable[Tuple[int, int]], with_square: bool = False) -> SeriesTable:
    return fill(SeriesTable(model, order), topologies, with_square=with_square)
