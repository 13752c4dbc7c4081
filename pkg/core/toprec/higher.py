"""Q = c ζ^r 的曲线在 0 处只有一个 r−1 阶分支点，用局部的高阶递归。"""
from itertools import combinations
from typing import Iterable, Optional, Tuple

from ..algebra import LocalSeries, coordinate, cyclotomic_ring, residue_at
from ..config import ZETA_SYMBOL, zeta_name
from ..curve import SpectralCurve, y_rational, zeta_coeffs
from ..errors import ConfigError, FieldTowerError, NonGenericError, ResidueError, TruncationError, ZeroDenominatorError
from ..log import LOG_TAG, logger
from .correlator import Correlator, CorrelatorTable, place_args, quotient, series_value
from .operators import operator_sum, partition_terms
from .recursion import MAX_DEPTH, first_depth, graded


def is_monomial(curve: SpectralCurve) -> bool:
    coeffs = zeta_coeffs(curve.Q_rational())
    return not curve.groups and all(not c for c in coeffs[:-1])


class HigherRecursion:
    """ω_{g,n}(ζ_1, I) = Res_{t=0} Σ_{∅≠t̲⊆{ω^j t}} K_{#t̲+1}(ζ_1; t, t̲) 𝓡^{(#t̲+1)}(t, t̲; I)。

    K_k = [1/(ζ_1 − t)] / Π_{t′∈t̲}(ω_{0,1}(t) − ω_{0,1}(t′))，单位根取在分圆环中。
    """

    def __init__(self, curve: SpectralCurve, table: Optional[CorrelatorTable] = None, max_depth: int = MAX_DEPTH):
        if not is_monomial(curve):
            raise NonGenericError("高阶递归只适用于 Q = cζ^r 的曲线")
        self.curve = curve
        self.table = table if table is not None else CorrelatorTable(curve)
        self.ring = cyclotomic_ring(curve.r, curve.space)
        self.max_depth = max_depth
        self._y = y_rational(curve)
        self._slope = curve.Q_prime_rational()

    @property
    def space(self):
        return self.curve.space

    def integrand(self, g: int, n: int, depth: int) -> LocalSeries:
        ring = self.ring
        omega = ring.gen
        one = LocalSeries([ring.one], zero=ring.zero, point=0)
        t = coordinate(0, ring.zero)
        sheets = [t * omega**j for j in range(self.curve.r)]
        first = self.space.gen(zeta_name(1))
        rest = [self.space.gen(zeta_name(i)) for i in range(2, n + 1)]
        alpha = self.curve.model.alpha

        heights = [series_value(self._y, {ZETA_SYMBOL: point}, one, depth) for point in sheets]
        slope = series_value(self._slope, {ZETA_SYMBOL: t}, one, depth)
        near = quotient(one, -t + first, depth)

        total = one * 0
        for size in range(1, self.curve.r):
            for chosen in combinations(range(1, self.curve.r), size):
                points = [sheets[0]] + [sheets[j] for j in chosen]
                gaps = one
                for j in chosen:
                    gaps = gaps * (heights[0] - heights[j]) * slope
                kernel = quotient(near * alpha**size, gaps, depth)

                def factor(h, picked, J, points=points):
                    args = [points[i] for i in picked] + [rest[j] for j in J]
                    return series_value(self.table.values(h, len(args)), place_args(args), one, depth)

                body = operator_sum(partition_terms(size + 1, g, n - 1, with_disc=False), factor, one)
                if not body.coeffs and body.prec is None:
                    continue
                weight = ring.one
                for j in chosen:
                    weight = weight * omega**j
                total = total + kernel * body * weight
        return total

    def residue(self, g: int, n: int):
        depth = first_depth(g, n) + 2 * self.curve.r
        while depth <= self.max_depth:
            try:
                value = self.integrand(g, n, depth)
            except (TruncationError, ZeroDenominatorError):
                depth *= 2
                continue
            if value.prec is None or value.prec > -1:
                return residue_at(value)
            depth += 1 - value.prec
        raise ResidueError(f"ω_{g},{n} 在 0 处展开到 {self.max_depth} 阶仍不足以读出留数")

    def step(self, g: int, n: int) -> Correlator:
        if 2 * g - 2 + n <= 0:
            raise ConfigError(f"({g},{n}) 不由拓扑递归给出")
        value = self.residue(g, n)
        if not value.is_scalar():
            raise FieldTowerError(f"ω_{g},{n} 的留数含有单位根，没有落在有理子域")
        correlator = Correlator(g, n, value.scalar_part(), meta={"recursion": "higher"})
        self.table.store(correlator)
        return correlator

    def run(self, topologies: Iterable[Tuple[int, int]]) -> CorrelatorTable:
        order = graded(topologies)
        for g, n in order:
            if not self.table.has(g, n):
                self.step(g, n)
        logger.info(f"{LOG_TAG} 高阶拓扑递归完成：r={self.curve.r}，{len(order)} 个拓扑")
        return self.table


def higher_tr_step(curve: SpectralCurve, g: int, n: int, table: CorrelatorTable) -> Correlator:
    return HigherRecursion(curve, table).step(g, n)


def higher_recursion(curve: SpectralCurve, topologies: Iterable[Tuple[int, int]]) -> CorrelatorTable:
    return HigherRecursion(curve).run(topologies)
