"""圆盘拓扑 (0,1) 的分级 Tutte 方程。"""
from typing import Tuple

from ..algebra import substitute
from ..config import U_SYMBOL, SeriesKind, z_name
from ..errors import ZeroDenominatorError
from .table import SeriesTable

H, W = SeriesKind.H, SeriesKind.W


def disc_init(table: SeriesTable) -> Tuple[object, object]:
    """H^{-1}_{0,1}(u;z) = (V′(u)−V′(z))/(u−z)，W^0_{0,1}(z) = Σ_j(−1/(V′(z)−V′(λ_j)) + 1/(V″(z)(z−λ_j)))。"""
    model = table.model
    u, z = model.u, model.z(1)
    h = (model.dV(u) - model.dV(z)) / (u - z)
    w = model.space.zero
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        w += -1 / (model.dV(z) - model.dV(lam)) + 1 / (model.dV(z, 2) * (z - lam))
    table.store(H, 0, 1, -1, h)
    table.store(W, 0, 1, 0, w)
    return h, w


def _lambda_sum(table: SeriesTable, h):
    """Σ_j (H(u;z) − H(u;λ_j))/(V′(z)−V′(λ_j))。"""
    model = table.model
    z = model.z(1)
    total = model.space.zero
    if not h:
        return total
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        total += (h - substitute(h, {z_name(1): lam})) / (model.dV(z) - model.dV(lam))
    return total


def _disc_rhs(table: SeriesTable, delta: int):
    """(u−z)H^{δ+1} 的右端：Σ_{δ′=0}^{δ+1} W^{δ′}H^{δ−δ′} 加上 λ 项。"""
    total = _lambda_sum(table, table.coefficient(H, 0, 1, delta))
    for dp in range(0, delta + 2):
        w = table.coefficient(W, 0, 1, dp)
        if w:
            total += w * table.coefficient(H, 0, 1, delta - dp)
    return total


def disc_step(table: SeriesTable, delta: int) -> Tuple[object, object]:
    """由 α̂^{δ+1} 阶方程求 H^{δ+1}_{0,1}，再令 u=z 得 W^{δ+2}_{0,1}。"""
    model = table.model
    u, z = model.u, model.z(1)
    rhs = _disc_rhs(table, delta)
    h = rhs / (u - z)
    table.store(H, 0, 1, delta + 1, h)

    if delta + 2 > table.order:
        return h, None
    second = model.dV(z, 2)
    if not second:
        raise ZeroDenominatorError("V″(z) 恒为零")
    total = _lambda_sum(table, h)
    total = substitute(total, {U_SYMBOL: z}) if total else total
    for dp in range(0, delta + 2):
        w_low = table.coefficient(W, 0, 1, dp)
        if w_low:
            total += w_low * substitute(table.coefficient(H, 0, 1, delta + 1 - dp), {U_SYMBOL: z})
    w = -total / second
    table.store(W, 0, 1, delta + 2, w)
    return h, w


def disc_series(table: SeriesTable) -> None:
    """H_{0,1}、W_{0,1} 填到截断阶。"""
    if not table.has(H, 0, 1, -1):
        disc_init(table)
    delta = table.top(H, 0, 1)
    while delta < table.order:
        disc_step(table, delta)
        delta += 1
