from itertools import combinations

from ..config import SeriesKind
from ..model import Model
from ..report import CheckReport
from .table import SeriesTable, lowest_order, place

W = SeriesKind.W


def _shares_factor(denom, poly) -> bool:
    return not denom.gcd(poly).is_ground


def sheet_polynomial(model: Model, a, b):
    """(V′(a) − V′(b))/(a − b) 的分子：其零点是 a 在 b 的其他原像 b^{(k)} 上。"""
    return ((model.dV(a) - model.dV(b)) / (a - b)).numer


def pole_structure_check(table: SeriesTable, g: int, n: int, delta: int) -> CheckReport:
    """W^δ_{g,n} 在 z_1 → λ_j^{(k)} 与 z_1 → z_2^{(k)} 处的极点。

    只有 (0,1) 在 α̂^0 阶有单极点 −1/(V′(z_1)−V′(λ_j))，只有 (0,2) 在 α̂^0 阶有双极点 −1/(V′(z_1)−V′(z_2))²；
    其余情形均无极点。
    """
    model = table.model
    value = table.coefficient(W, g, n, delta)
    first = model.z(1)
    report = CheckReport(f"poles_{g},{n}_δ{delta}")
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        sheet = sheet_polynomial(model, first, lam)
        if (g, n, delta) == (0, 1, 0):
            report.add(f"z1→λ{j}^(k) 有极点", _shares_factor(value.denom, sheet))
            regular = value + 1 / (model.dV(first) - model.dV(lam))
        else:
            regular = value
        report.add(f"z1→λ{j}^(k) 去掉主部后正则", not _shares_factor(regular.denom, sheet))
    if n >= 2:
        second = model.z(2)
        sheet = sheet_polynomial(model, first, second)
        if (g, n, delta) == (0, 2, 0):
            gap = model.dV(first) - model.dV(second)
            report.add("z1→z2^(k) 有双极点", _shares_factor((value * gap).denom, sheet))
            regular = value + 1 / gap**2
        else:
            regular = value
        report.add("z1→z2^(k) 去掉主部后正则", not _shares_factor(regular.denom, sheet))
        report.add("z1→z2 对角线正则", not _shares_factor(value.denom, (first - second).numer))
    return report


def symmetry_check(table: SeriesTable, g: int, n: int) -> CheckReport:
    """W_{g,n} 在每一阶关于 z_1..z_n 对称。"""
    model = table.model
    report = CheckReport(f"symmetry_{g},{n}")
    z = [model.z(i) for i in range(1, n + 1)]
    for delta in range(lowest_order(W, g, n), table.top(W, g, n) + 1):
        value = table.coefficient(W, g, n, delta)
        for i, k in combinations(range(n), 2):
            swapped = list(z)
            swapped[i], swapped[k] = z[k], z[i]
            report.expect_equal(f"δ={delta} z{i + 1}↔z{k + 1}", place(value, swapped), value)
    return report
