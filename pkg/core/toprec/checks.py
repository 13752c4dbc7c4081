"""关联子的自洽校验：线性与二次圈方程、对称性与极点位置、与 Tutte 级数比较、H = Ȟ 与 P = P̌。"""
from math import factorial
from typing import Callable, List, Sequence

from ..algebra import (
    INFINITY,
    LocalSeries,
    QuotientRing,
    degree_in,
    derivative,
    rational_ring,
    residue_of_rational,
    series_substitute,
    substitute,
    univariate_coeffs,
)
from ..config import ALPHA_SYMBOL, U_SYMBOL, ZETA_SYMBOL, SeriesKind, z_name, zeta_name
from ..curve import SpectralCurve, alpha_unit, branchpoints, sheet_sum, zeta_coeffs, zeta_of_z
from ..errors import ResidueError, TruncationError, ZeroDenominatorError
from ..log import LOG_TAG, logger
from ..report import CheckReport
from ..tutte import SeriesTable, lowest_order
from .correlator import Correlator, CorrelatorTable, exact_value, place_args, series_value
from .operators import E_operator, operator_sum, partition_terms
from .recursion import MAX_DEPTH, LocalPoint, first_depth

H, W = SeriesKind.H, SeriesKind.W


def loop_check_linear(curve: SpectralCurve, table: CorrelatorTable, g: int, n: int) -> CheckReport:
    """Σ_k ω_{g,n}(ζ_1^{(k)}, I)：(0,1)、(0,2) 等于曲线给出的项，其余为零。"""
    report = CheckReport(f"linear_loop_{g}_{n}")
    first = zeta_name(1)
    P1 = curve.Q_prime_rational(first)
    value = table.omega(g, n) / P1
    total = P1 * sheet_sum(curve, lambda w: exact_value(value, {first: w}, w.ring.one), first)

    if (g, n) == (0, 1):
        model = curve.model
        Q1 = curve.Q_rational(first)
        expected = -P1 * model.coeff(model.r) / (model.coeff(model.r + 1) * model.alpha)
        for k, (_, count) in enumerate(curve.groups):
            at_xi = substitute(curve.Q_rational(), {ZETA_SYMBOL: curve.xi_rational(k)})
            expected += P1 * count / (Q1 - at_xi)
    elif (g, n) == (0, 2):
        second = zeta_name(2)
        P2 = curve.Q_prime_rational(second)
        expected = P1 * P2 / (curve.Q_rational(first) - curve.Q_rational(second)) ** 2
    else:
        expected = curve.space.zero
    report.expect_equal(f"Σ_k ω_{g},{n}(ζ1^(k), I)", total, expected)
    return report


def _expand(build: Callable[[int], LocalSeries], depth: int, wanted: int, max_depth: int) -> LocalSeries:
    """加深展开直到 s^wanted 以下的系数全部已知。"""
    while depth <= max_depth:
        try:
            value = build(depth)
        except (TruncationError, ZeroDenominatorError):
            depth *= 2
            continue
        if value.prec is None or value.prec >= wanted:
            return value
        depth += wanted - value.prec
    raise ResidueError(f"展开到 {max_depth} 阶仍读不到 s^{wanted} 以下的系数")


def loop_check_quadratic(curve: SpectralCurve, table: CorrelatorTable, g: int, n: int, max_depth: int = MAX_DEPTH) -> CheckReport:
    """每个简单分支点 b 处：

    ω_{g,n}(ζ, I) + ω_{g,n}(σ(ζ), I) 无极点；
    ω_{g−1,n+1}(ζ, σ(ζ), I) + Σ_{h,J} ω_{h,1+|J|}(ζ, J) ω_{g−h,1+|J′|}(σ(ζ), J′)（含 (0,1)）除以 dx² 后无极点。
    """
    report = CheckReport(f"quadratic_loop_{g}_{n}")
    space = curve.space
    rest = [space.gen(zeta_name(i)) for i in range(2, n + 1)]
    value = table.values(g, n)

    for index, bp in enumerate(branchpoints(curve)):
        label = f"b{index + 1}"
        if not bp.simple:
            report.add(label, False, f"分支点重数为 {bp.multiplicity}")
            continue

        def odd(depth, bp=bp):
            point = LocalPoint(curve, bp, depth + 2)
            here = series_value(value, place_args([point.zeta] + rest), point.one, depth)
            there = series_value(value, place_args([point.sigma] + rest), point.one, depth)
            return here + there * point.dsigma

        def quadratic(depth, bp=bp):
            point = LocalPoint(curve, bp, depth + 2)
            pair = [point.zeta, point.sigma]

            def factor(h, chosen, J):
                args = [pair[i] for i in chosen] + [rest[j] for j in J]
                return series_value(table.omega(h, len(args)), place_args(args), point.one, depth)

            return operator_sum(partition_terms(2, g, n - 1), factor, point.one) * point.dsigma

        even = _expand(odd, first_depth(g, n), 0, max_depth)
        report.add(f"{label}: ω(ζ)+ω(σ(ζ)) 无极点", not even.truncate(0).coeffs, f"赋值 {even.valuation}")
        # dx² 在 b 处有二阶零点
        combined = _expand(quadratic, first_depth(g, n) + 4, 2, max_depth)
        report.add(f"{label}: 二次组合/dx² 无极点", not combined.truncate(2).coeffs, f"赋值 {combined.valuation}")
    logger.debug(f"{LOG_TAG} ω_{g},{n} 二次圈方程校验：{'通过' if report.ok else '失败'}")
    return report


def correlator_check(curve: SpectralCurve, correlator: Correlator) -> CheckReport:
    """对称性、极点只在分支点上、每个变量在 ∞ 处留数为零。"""
    g, n = correlator.g, correlator.n
    report = CheckReport(f"correlator_{g}_{n}")
    value = correlator.value
    for i in range(1, n):
        order = list(range(1, n + 1))
        order[i - 1], order[i] = order[i], order[i - 1]
        report.expect_equal(f"ζ{i}↔ζ{i + 1}", correlator.permuted(order), value)

    names = correlator.variables()
    _, factors = value.denom.factor_list()
    for factor, power in factors:
        used = [name for name in names if len(univariate_coeffs(factor, name)) > 1]
        if not used:
            continue
        text = str(factor.as_expr())
        if len(used) > 1:
            report.add(f"极点 {text}", False, f"同时含 {', '.join(used)}")
            continue
        slope = curve.Q_prime_rational(used[0]).numer
        report.add(f"极点 {text} 在分支点上", not slope.rem(factor), f"{used[0]} 的 {power} 阶极点")

    for name in names:
        report.expect_zero(f"{name} → ∞ 的留数", residue_of_rational(value, name, INFINITY))
        degree = degree_in(value, name)
        report.add(f"{name} → ∞ 至少二阶衰减", degree is None or degree <= -2, f"次数 {degree}")
    return report


def _transport(curve: SpectralCurve, f, n: int, prec: int):
    """ζ_i → ζ(z_i)，α̂ 取为级数变量。"""
    places = {zeta_name(i): zeta_of_z(curve, z_name(i)) for i in range(1, n + 1)}
    places[ALPHA_SYMBOL] = alpha_unit(curve.model)
    return series_substitute(f, places, max(prec, curve.order + 1))


def _compare(report: CheckReport, label: str, series, delta: int, expected) -> None:
    if series.prec is not None and delta >= series.prec:
        report.add(label, False, f"只展开到 α̂^{series.prec - 1}")
        return
    report.expect_equal(label, series.coefficient(delta), expected)


def tutte_check(curve: SpectralCurve, correlator: Correlator, tutte: SeriesTable) -> CheckReport:
    """ω_{g,n}/∏ dx(ζ_i) 在 ζ_i = ζ(z_i) 处展开，逐阶等于 Tutte 方程的 W_{g,n}。"""
    g, n = correlator.g, correlator.n
    report = CheckReport(f"tutte_{g}_{n}")
    low = lowest_order(W, g, n)
    top = min(tutte.top(W, g, n), curve.order + low)
    if top < low:
        return report
    value = correlator.value
    for name in correlator.variables():
        value = value / curve.Q_prime_rational(name)
    series = _transport(curve, value, n, top + 1)
    for delta in range(low, top + 1):
        _compare(report, f"α̂^{delta}", series, delta, curve.space.convert(tutte.coefficient(W, g, n, delta)))
    logger.debug(f"{LOG_TAG} ω_{g},{n} 与 Tutte 级数比较到 α̂^{top}")
    return report


def _divide_root(coeffs: Sequence, root):
    """coeffs(w)/(w − root) 的综合除法，返回商与余数。"""
    d = len(coeffs) - 1
    quot: List = [None] * d
    carry = coeffs[d]
    for i in range(d - 1, -1, -1):
        quot[i] = carry
        carry = coeffs[i] + root * carry
    return quot, carry


class SheetTower:
    """x(w) = x(ζ_1) 的其余 r−1 个根 τ_0(ζ_1) 上的逐层商环。

    第 j 层为上一层添加一个与前面各根都不同的根，对称函数之和由逐层取迹得到。
    """

    def __init__(self, curve: SpectralCurve, name: str = zeta_name(1)):
        self.space = curve.space
        self.first = curve.space.gen(name)
        coeffs = zeta_coeffs(curve.Q_rational())
        coeffs[0] = coeffs[0] - curve.Q_rational(name)
        self.modulus, _ = _divide_root(coeffs, self.first)
        self._rings: List[QuotientRing] = []
        self._moduli: List[List] = []

    @property
    def size(self) -> int:
        return len(self.modulus) - 1

    def rings(self, k: int) -> List[QuotientRing]:
        while len(self._rings) < k:
            if not self._rings:
                modulus = self.modulus
                ring = rational_ring(self.space, modulus, name="t1")
            else:
                prev = self._rings[-1]
                modulus, _ = _divide_root([prev.one * c for c in self._moduli[-1]], prev.gen)
                ring = QuotientRing(modulus, prev.zero, prev.one, name=f"t{len(self._rings) + 1}")
            self._rings.append(ring)
            self._moduli.append(modulus)
        return self._rings[:k]

    def _sum(self, k: int, fn: Callable) -> object:
        if k == 0:
            return fn([], self.space.one)
        if k > self.size:
            return self.space.zero
        rings = self.rings(k)
        top = rings[-1]
        value = fn([top.one * ring.gen for ring in rings], top.one)
        for ring in reversed(rings):
            value = ring.trace(value)
        return value / factorial(k)

    def subset_sum(self, k: int, fn: Callable, include_first: bool = False):
        """Σ_{t̲ ⊂_k} fn(t̲)，fn 关于 t̲ 对称；include_first 时 ζ_1 本身也是候选。"""
        total = self._sum(k, fn)
        if include_first and k >= 1:
            total += self._sum(k - 1, lambda points, one: fn([one * self.first] + points, one))
        return total


def _sheet_polynomial(curve: SpectralCurve, table: CorrelatorTable, g: int, n: int, include_first: bool):
    space = curve.space
    model = curve.model
    u, a = space.gen(U_SYMBOL), model.alpha
    rest = [space.gen(zeta_name(i)) for i in range(2, n + 1)]
    tower = SheetTower(curve)
    top = curve.r if include_first else curve.r - 1
    total = space.zero
    for k in range(top + 1):
        inner = tower.subset_sum(
            k,
            lambda points, one, k=k: E_operator(table, k, g, points, rest, one),
            include_first=include_first,
        )
        if inner:
            total += (-1) ** k * u ** (top - k) * a ** (k - 1) * inner
    return total * model.coeff(model.r + 1)


def check_H(curve: SpectralCurve, table: CorrelatorTable, g: int, n: int):
    """Ȟ_{g,n}(u; ζ_1, I) = v_{r+1} Σ_{k=0}^{r−1} (−1)^k u^{r−1−k} α̂^{k−1} Σ_{t̲ ⊂_k τ_0(ζ_1)} 𝓔^{(k)}W_{g,n}(t̲; I)。"""
    return _sheet_polynomial(curve, table, g, n, include_first=False)


def check_P(curve: SpectralCurve, table: CorrelatorTable, g: int, n: int):
    """P̌_{g,n}：同 Ȟ，但 k 到 r，子集取自全部 r 个叶。"""
    return _sheet_polynomial(curve, table, g, n, include_first=True)


def P_polynomial(tutte: SeriesTable, g: int, n: int, delta: int):
    """P^δ_{g,n}(u; z_1, I) = −Σ_j H^{δ−1}_{g,n}(u; λ_j, I)/(V′(z_1) − V′(λ_j))
    − Σ_m ∂_{z_m}[H^{δ−1}_{g,n−1}(u; z_m, I∖z_m)/(V′(z_1) − V′(z_m))]/V″(z_m)，
    另有 P^{-1}_{0,1} = V′(u) − V′(z_1)。"""
    model = tutte.model
    first = model.z(1)
    if (g, n) == (0, 1) and delta == -1:
        return model.dV(model.u) - model.dV(first)
    rest = [model.z(i) for i in range(2, n + 1)]
    total = model.space.zero
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        h = tutte.at(H, g, n, delta - 1, [lam] + rest)
        if h:
            total += h / (model.dV(first) - model.dV(lam))
    for m in range(2, n + 1):
        zm = model.z(m)
        others = [model.z(i) for i in range(2, n + 1) if i != m]
        h = tutte.at(H, g, n - 1, delta - 1, [zm] + others)
        if h:
            total += derivative(h / (model.dV(first) - model.dV(zm)), z_name(m)) / model.dV(zm, 2)
    return -total


def check_PH_equivalence(curve: SpectralCurve, tutte: SeriesTable, g: int, n: int, table: CorrelatorTable) -> CheckReport:
    """Ȟ、P̌ 在 ζ_i = ζ(z_i) 处展开后逐阶等于 Tutte 方程的 H 与由 H 构造的 P。"""
    report = CheckReport(f"PH_{g}_{n}")
    low = lowest_order(H, g, n)
    top = min(tutte.top(H, g, n), curve.order + low)
    if top >= low:
        series = _transport(curve, check_H(curve, table, g, n), n, top + 1)
        for delta in range(low, top + 1):
            _compare(report, f"H α̂^{delta}", series, delta, curve.space.convert(tutte.coefficient(H, g, n, delta)))

    p_top = min(tutte.top(H, g, n) + 1, curve.order + low)
    if n > 1:
        p_top = min(p_top, tutte.top(H, g, n - 1) + 1)
    if p_top >= low:
        series = _transport(curve, check_P(curve, table, g, n), n, p_top + 1)
        for delta in range(low, p_top + 1):
            _compare(report, f"P α̂^{delta}", series, delta, curve.space.convert(P_polynomial(tutte, g, n, delta)))
    logger.info(f"{LOG_TAG} H/P 等价校验 ({g},{n})：{'通过' if report.ok else '失败'}")
    return report
