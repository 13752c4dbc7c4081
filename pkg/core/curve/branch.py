from dataclasses import dataclass
from typing import Dict, List

from ..algebra import (
    LocalSeries,
    QuotientRing,
    coordinate,
    cyclotomic_ring,
    evaluate_univariate,
    rf_to_text,
    root_multiplicities,
    root_rings,
    series_compose,
    series_reversion,
)
from ..config import ZETA_SYMBOL
from ..errors import NonGenericError
from ..report import CheckReport
from .spectral import SpectralCurve, zeta_coeffs


@dataclass
class Branchpoint:
    """Q′ 的一个不可约因子 p：分支点为 K[ζ]/(p) 的生成元，共 degree 个共轭。"""

    ring: QuotientRing
    multiplicity: int

    @property
    def degree(self) -> int:
        return self.ring.degree

    @property
    def point(self):
        return self.ring.gen

    @property
    def simple(self) -> bool:
        return self.multiplicity == 1

    def rational_value(self):
        """一次因子时的根。"""
        if self.degree != 1:
            raise NonGenericError(f"分支点所在因子次数为 {self.degree}，不是有理点")
        return -self.ring.modulus[0]

    def to_dict(self) -> Dict:
        return {
            "minimal_polynomial": [rf_to_text(c) for c in self.ring.modulus],
            "degree": self.degree,
            "multiplicity": self.multiplicity,
        }


def branchpoints(curve: SpectralCurve) -> List[Branchpoint]:
    """Q′(ζ) = 0 的根按不可约因子分组，带重数。"""
    Q_prime = curve.Q_prime_rational()
    rings = root_rings(Q_prime, ZETA_SYMBOL)
    counts = root_multiplicities(Q_prime, ZETA_SYMBOL)
    return [Branchpoint(ring=ring, multiplicity=m) for ring, m in zip(rings, counts)]


def _Q_at(curve: SpectralCurve, x: LocalSeries) -> LocalSeries:
    return evaluate_univariate(zeta_coeffs(curve.Q_rational()), x)


def deck_local(curve: SpectralCurve, branchpoint: Branchpoint, order: int) -> LocalSeries:
    """简单分支点 b 附近 Q(σ(ζ)) = Q(ζ) 的非平凡解，以 s = ζ − b 展开到 s^order（不含）。

    写 Q(b+s) − Q(b) = c t²，t = s(1 + O(s))，则 σ 对应 t → −t。
    """
    if not branchpoint.simple:
        raise NonGenericError(f"分支点重数为 {branchpoint.multiplicity}，没有局部对合")
    zero = branchpoint.ring.zero
    b = branchpoint.point
    local = _Q_at(curve, coordinate(b, zero))
    local = local - local.coefficient(0)
    lead = local.coefficient(2)
    if local.coefficient(1) or not lead:
        raise NonGenericError("分支点处 Q 的展开不是二次的")
    ratio = (local.shift(-2) * (1 / lead)).truncate(order)
    t = ratio.unit_sqrt().shift(1)
    s_of_t = series_reversion(t, order)
    sigma = series_compose(s_of_t, -t)
    return sigma + b


def deck_check(curve: SpectralCurve, branchpoint: Branchpoint, order: int) -> CheckReport:
    """σ(b) = b、Q∘σ = Q、σ∘σ = id，均到 s^order。"""
    report = CheckReport("deck_local")
    zero = branchpoint.ring.zero
    b = branchpoint.point
    sigma = deck_local(curve, branchpoint, order)
    offset = sigma - b
    report.expect_zero("σ(b) = b", offset.coefficient(0))
    report.expect_equal("σ 的线性项为 −s", offset.coefficient(1), -branchpoint.ring.one)
    gap = _Q_at(curve, sigma) - _Q_at(curve, coordinate(b, zero))
    report.add("Q∘σ = Q", not gap.truncate(order).coeffs, f"赋值 {gap.valuation}")
    twice = series_compose(offset, offset)
    identity = twice - LocalSeries([branchpoint.ring.one], start=1, zero=zero, var=twice.var, point=b)
    report.add("σ∘σ = id", not identity.truncate(order).coeffs, f"赋值 {identity.valuation}")
    return report


def global_decks(curve: SpectralCurve) -> List:
    """r=2 时 σ(ζ) = −ζ − Q_1/Q_2；Q = cζ^r 时 ζ^{(k)} = ω^k ζ，ω 在分圆域中。"""
    zeta = curve.zeta
    coeffs = zeta_coeffs(curve.Q_rational())
    if curve.r == 2:
        return [-zeta - coeffs[1] / coeffs[2]]
    if all(not c for c in coeffs[:-1]):
        ring = cyclotomic_ring(curve.r, curve.space)
        omega = ring.gen
        return [omega**k * zeta for k in range(1, curve.r)]
    raise NonGenericError(f"r={curve.r} 的曲线没有整体 deck 变换，只能用局部展开")
