"""各类生成函数之间的关系：𝓕 → 𝓦、𝓦 → 𝓢，以及 U 与 W、H 的留数关系。"""
from itertools import product
from typing import Dict, List, Sequence, Tuple

from ..algebra import (
    INFINITY,
    AlphaSeries,
    coefficient,
    degree_in,
    derivative,
    expand_rational,
    is_polynomial_in,
    polynomial_part,
    residue_of_rational,
)
from ..config import ALPHA_SYMBOL, U_SYMBOL, SeriesKind, multi_name, z_name
from ..errors import ConfigError, NonGenericError
from ..maps import propagator
from ..model import Model
from ..report import CheckReport
from .table import SeriesTable, lowest_order, place

H, W, U = SeriesKind.H, SeriesKind.W, SeriesKind.U


def _is_disc(g: int, n: int) -> bool:
    return (g, n) == (0, 1)


def cylinder_correction(model: Model):
    z1, z2 = model.z(1), model.z(2)
    return 1 / (model.dV(z1, 2) * model.dV(z2, 2) * (z1 - z2) ** 2) - 1 / (model.dV(z1) - model.dV(z2)) ** 2


def disc_correction(model: Model):
    z = model.z(1)
    total = model.space.zero
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        total += 1 / (model.dV(z, 2) * (z - lam)) - 1 / (model.dV(z) - model.dV(lam))
    return total


def relation_W_from_F(F: AlphaSeries, model: Model, g: int, n: int) -> AlphaSeries:
    """W_{g,n} = Π_i (1/V″(z_i)) ∂_{z_i} F_{g,n}，(0,1) 与 (0,2) 在 α̂^0 阶另加修正项。"""
    terms: Dict[int, object] = {}
    for delta, value in F.terms().items():
        for i in range(1, n + 1):
            value = derivative(value, z_name(i)) / model.dV(model.z(i), 2)
        terms[delta] = value
    if F.prec is None or F.prec > 0:
        extra = model.space.zero
        if (g, n) == (0, 2):
            extra = cylinder_correction(model)
        elif _is_disc(g, n):
            extra = disc_correction(model)
        if extra:
            terms[0] = terms.get(0, model.space.zero) + extra
    return AlphaSeries.from_terms(terms, prec=F.prec, zero=model.space.zero, var=ALPHA_SYMBOL)


def _multi_names(ks: Sequence[int]) -> List[List[str]]:
    return [[multi_name(i, j) for j in range(1, k + 1)] for i, k in enumerate(ks, start=1)]


def _check_multi_space(model: Model, ks: Sequence[int]) -> None:
    missing = [name for names in _multi_names(ks) for name in names if name not in model.space]
    if missing:
        raise ConfigError(f"模型缺少符号 {missing}，请在 extra_symbols 中声明")


def _nonzero(value, label: str):
    if not value:
        raise NonGenericError(f"{label} 处 V′ 取值重合")
    return value


def _multi_disc(W01: AlphaSeries, model: Model, names: Tuple[str, ...], memo: Dict) -> AlphaSeries:
    """S_{0;(k)} 的差商递推，k=2 时另加单边图的权 𝒫。"""
    if names in memo:
        return memo[names]
    if len(names) == 1:
        target = model.gen(names[0])
        result = W01.map_coeffs(lambda c: place(c, [target]))
    else:
        x1, x2 = model.gen(names[0]), model.gen(names[1])
        keep_first = _multi_disc(W01, model, (names[0],) + names[2:], memo)
        keep_second = _multi_disc(W01, model, names[1:], memo)
        gap = _nonzero(model.dV(x1) - model.dV(x2), f"{names[0]}, {names[1]}")
        result = (keep_first - keep_second).shift(1) * (1 / gap)
        if len(names) == 2:
            result = result + AlphaSeries([propagator(x1, x2, model)], zero=model.space.zero)
    memo[names] = result
    return result


def relation_S_from_W(W_series: AlphaSeries, model: Model, g: int, ks: Sequence[int]) -> AlphaSeries:
    """多纤毛图：对每个 CO 集做 V′ 值上的差商，k_m > 1 时整体乘 α̂^{k_m−1}。"""
    ks = tuple(ks)
    if not ks or any(k < 1 for k in ks):
        raise ConfigError(f"k̲ = {ks} 无效")
    _check_multi_space(model, ks)
    names = _multi_names(ks)
    if _is_disc(g, len(ks)):
        return _multi_disc(W_series, model, tuple(names[0]), {})
    shift = sum(k - 1 for k in ks)
    terms: Dict[int, object] = {}
    for choice in product(*(range(k) for k in ks)):
        args = []
        denom = model.space.one
        for i, j in enumerate(choice):
            here = model.gen(names[i][j])
            args.append(here)
            for other, name in enumerate(names[i]):
                if other != j:
                    denom = denom * _nonzero(model.dV(here) - model.dV(model.gen(name)), f"{names[i][j]}, {name}")
        for delta, value in W_series.terms().items():
            part = place(value, args) / denom
            terms[delta + shift] = terms.get(delta + shift, model.space.zero) + part
    prec = None if W_series.prec is None else W_series.prec + shift
    return AlphaSeries.from_terms(terms, prec=prec, zero=model.space.zero, var=ALPHA_SYMBOL)


def _orders(table: SeriesTable, g: int, n: int, *kinds: SeriesKind) -> range:
    low = min(lowest_order(k, g, n) for k in kinds)
    high = min(table.top(k, g, n) for k in kinds)
    return range(low, high + 1)


def H_from_U(table: SeriesTable, g: int, n: int) -> AlphaSeries:
    """H_{g,n} = V″(z_1)[V′(u) U_{g,n}]₊，逐阶做关于 u 的多项式除法。"""
    model = table.model
    u, first = model.u, model.z(1)
    terms = {}
    for delta in _orders(table, g, n, U):
        value = table.coefficient(U, g, n, delta)
        if value:
            terms[delta] = model.dV(first, 2) * polynomial_part(model.dV(u) * value, U_SYMBOL)
    return AlphaSeries.from_terms(terms, prec=table.top(U, g, n) + 1, zero=model.space.zero, var=ALPHA_SYMBOL)


def relation_residues_U(table: SeriesTable, g: int, n: int) -> CheckReport:
    """U 与 W 的三个留数/极限关系，逐阶比较。"""
    model = table.model
    u, first = model.u, model.z(1)
    d1, d2 = model.dV(first), model.dV(first, 2)
    disc = _is_disc(g, n)
    report = CheckReport(f"residues_U_{g},{n}")
    for delta in _orders(table, g, n, U, W):
        value = table.coefficient(U, g, n, delta)
        w = table.coefficient(W, g, n, delta)
        zero = model.space.zero

        residue = -residue_of_rational(model.dV(u) * value, U_SYMBOL, INFINITY) if value else zero
        expected = d1 / d2 if disc and delta == -1 else zero
        report.expect_equal(f"δ={delta} −Res V′U", residue, expected)

        moment = -residue_of_rational(model.dV(u) * (u - first) * value, U_SYMBOL, INFINITY) if value else zero
        expected = d1 / d2 * w
        if disc and delta == 0:
            expected += model.N / d2
        report.expect_equal(f"δ={delta} −Res V′(u−z)U", moment, expected)

        shifted = value - 1 / (d2 * (u - first)) if disc and delta == -1 else value
        if shifted:
            local = expand_rational(u**2 * shifted, U_SYMBOL, INFINITY, 1)
            report.add(f"δ={delta} u²U 有界", local.valuation >= 0, f"赋值 {local.valuation}")
            limit = local.coefficient(0)
        else:
            limit = zero
        report.expect_equal(f"δ={delta} lim u²U", limit, w / d2)
    return report


def h_structure_check(table: SeriesTable, g: int, n: int) -> CheckReport:
    """H 为 u 的多项式、u^{r−2} 系数与 W 的关系，以及有 U 时的 [u V′(u) U]₊ 恒等式。"""
    model = table.model
    r = model.r
    u, first = model.u, model.z(1)
    disc = _is_disc(g, n)
    top = r - 1 if disc else r - 2
    report = CheckReport(f"H_structure_{g},{n}")
    for delta in _orders(table, g, n, H, W):
        h = table.coefficient(H, g, n, delta)
        w = table.coefficient(W, g, n, delta)
        if not is_polynomial_in(h, U_SYMBOL):
            report.add(f"δ={delta} H 为 u 的多项式", False, "u 出现在分母中")
            continue
        degree = degree_in(h, U_SYMBOL)
        report.add(f"δ={delta} deg_u H ≤ {top}", degree is None or degree <= top, f"次数 {degree}")
        expected = model.coeff(r + 1) * w
        if disc and delta == -1:
            expected += model.coeff(r + 1) * first + model.coeff(r)
        report.expect_equal(f"δ={delta} u^{r - 2} 系数", coefficient(h, U_SYMBOL, r - 2), expected)
        if disc:
            lead = model.coeff(r + 1) if delta == -1 else model.space.zero
            report.expect_equal(f"δ={delta} u^{r - 1} 系数", coefficient(h, U_SYMBOL, r - 1), lead)
        if not table.has(U, g, n, delta):
            continue
        value = table.coefficient(U, g, n, delta)
        left = model.dV(first, 2) * polynomial_part(u * model.dV(u) * value, U_SYMBOL) if value else model.space.zero
        right = u * h
        if disc and delta == -1:
            right += model.dV(first)
        report.expect_equal(f"δ={delta} [u V′(u) U]₊", left, right)
    if table.top(U, g, n) >= lowest_order(U, g, n):
        from_u = H_from_U(table, g, n)
        for delta in _orders(table, g, n, H, U):
            report.expect_equal(f"δ={delta} H 由 U 重建", from_u.coefficient(delta), table.coefficient(H, g, n, delta))
    return report
