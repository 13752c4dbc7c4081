"""简单分支点上的拓扑递归。

K_b(ζ_1, ζ) = α̂ [1/(ζ_1−ζ) − 1/(ζ_1−σ(ζ))] / (2 (y(ζ) − y(σ(ζ))) Q′(ζ))，
ω_{g,n}(ζ_1, I) = Σ_b Res_{ζ=b} K_b(ζ_1, ζ) 𝓡^{(2)}(ζ, σ(ζ); I)。
留数在 s = ζ − b 的局部坐标下读出；同一不可约因子的共轭分支点一起用迹求和。
"""
from typing import Dict, Iterable, List, Optional, Tuple

from ..algebra import LocalSeries, coordinate, residue_at
from ..config import ZETA_SYMBOL, zeta_name
from ..curve import Branchpoint, SpectralCurve, branchpoints, deck_local, y_rational
from ..errors import ConfigError, NonGenericError, ResidueError, TruncationError, ZeroDenominatorError
from ..log import LOG_TAG, logger
from ..tutte import closure
from .correlator import Correlator, CorrelatorTable, place_args, quotient, series_value
from .operators import operator_sum, partition_terms

MAX_DEPTH = 96


def first_depth(g: int, n: int) -> int:
    return 2 * (2 * g - 2 + n) + 4


def graded(topologies: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """目标拓扑及其前置拓扑中 2g−2+n > 0 的部分，按 2g−2+n 排序。"""
    return [top for top in closure(topologies) if 2 * top[0] - 2 + top[1] > 0]


class LocalPoint:
    """某个分支点处的局部数据：ζ = b + s、σ(s)、σ′(s)、常数 1。"""

    def __init__(self, curve: SpectralCurve, branchpoint: Branchpoint, order: int):
        ring = branchpoint.ring
        self.branchpoint = branchpoint
        self.one = LocalSeries([ring.one], zero=ring.zero, point=branchpoint.point)
        self.zeta = coordinate(branchpoint.point, ring.zero)
        self.sigma = deck_local(curve, branchpoint, order)
        self.dsigma = self.sigma.derivative()


class TopologicalRecursion:
    """按 2g−2+n 逐个求 ω_{g,n}；所有分支点必须是简单的。"""

    def __init__(self, curve: SpectralCurve, table: Optional[CorrelatorTable] = None, max_depth: int = MAX_DEPTH):
        self.curve = curve
        self.table = table if table is not None else CorrelatorTable(curve)
        self.branchpoints = branchpoints(curve)
        for bp in self.branchpoints:
            if not bp.simple:
                raise NonGenericError(f"分支点重数为 {bp.multiplicity}，简单分支点递归不适用")
        self.max_depth = max_depth
        self._y = y_rational(curve)
        self._slope = curve.Q_prime_rational()
        self._points: Dict[Tuple[int, int], LocalPoint] = {}

    @property
    def space(self):
        return self.curve.space

    def local(self, index: int, order: int) -> LocalPoint:
        key = (index, order)
        if key not in self._points:
            self._points[key] = LocalPoint(self.curve, self.branchpoints[index], order)
        return self._points[key]

    def kernel(self, point: LocalPoint, depth: int) -> LocalSeries:
        """K_b 的 dζ_1/dζ 系数。"""
        first = self.space.gen(zeta_name(1))
        one = point.one
        left = quotient(one, -point.zeta + first, depth)
        right = quotient(one, -point.sigma + first, depth)
        gap = series_value(self._y, {ZETA_SYMBOL: point.zeta}, one, depth) - series_value(
            self._y, {ZETA_SYMBOL: point.sigma}, one, depth
        )
        slope = series_value(self._slope, {ZETA_SYMBOL: point.zeta}, one, depth)
        return quotient((left - right) * self.curve.model.alpha, gap * slope * 2, depth)

    def bracket(self, point: LocalPoint, g: int, n: int, depth: int) -> LocalSeries:
        """𝓡^{(2)}(ζ, σ(ζ); I) 的 dζ² 系数，σ 一侧带 σ′。"""
        rest = [self.space.gen(zeta_name(i)) for i in range(2, n + 1)]
        pair = [point.zeta, point.sigma]

        def factor(h, chosen, J):
            args = [pair[i] for i in chosen] + [rest[j] for j in J]
            return series_value(self.table.values(h, len(args)), place_args(args), point.one, depth)

        total = operator_sum(partition_terms(2, g, n - 1, with_disc=False), factor, point.one)
        return total * point.dsigma

    def integrand(self, index: int, g: int, n: int, depth: int) -> LocalSeries:
        point = self.local(index, depth + 2)
        return self.kernel(point, depth) * self.bracket(point, g, n, depth)

    def residue(self, index: int, g: int, n: int):
        """在第 index 个分支点取留数，截断不够时加深展开。"""
        depth = first_depth(g, n)
        while depth <= self.max_depth:
            try:
                value = self.integrand(index, g, n, depth)
            except (TruncationError, ZeroDenominatorError):
                depth *= 2
                continue
            if value.prec is None or value.prec > -1:
                return residue_at(value)
            depth += 1 - value.prec
        raise ResidueError(f"ω_{g},{n} 在第 {index + 1} 个分支点处展开到 {self.max_depth} 阶仍不足以读出留数")

    def step(self, g: int, n: int) -> Correlator:
        if 2 * g - 2 + n <= 0:
            raise ConfigError(f"({g},{n}) 不由拓扑递归给出")
        if n > self.curve.model.n_max:
            raise ConfigError(f"n={n} 超过符号 ζ 的个数 {self.curve.model.n_max}")
        total = self.space.zero
        for index, bp in enumerate(self.branchpoints):
            total += bp.ring.trace(self.residue(index, g, n))
        correlator = Correlator(g, n, total, meta={"branchpoints": len(self.branchpoints)})
        self.table.store(correlator)
        return correlator

    def run(self, topologies: Iterable[Tuple[int, int]]) -> CorrelatorTable:
        order = graded(topologies)
        for g, n in order:
            if not self.table.has(g, n):
                self.step(g, n)
        logger.info(f"{LOG_TAG} 拓扑递归完成：{len(order)} 个拓扑，{len(self.branchpoints)} 个分支点因子")
        return self.table


def tr_step(curve: SpectralCurve, g: int, n: int, table: CorrelatorTable) -> Correlator:
    return TopologicalRecursion(curve, table).step(g, n)


def topological_recursion(curve: SpectralCurve, topologies: Iterable[Tuple[int, int]]) -> CorrelatorTable:
    return TopologicalRecursion(curve).run(topologies)
