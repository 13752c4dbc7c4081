from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple

from sympy.polys.fields import FracElement

from ..algebra import (
    LaurentSeries,
    divide_series,
    evaluate_poly,
    rf_to_json,
    rf_to_text,
    substitute,
    symbol_names,
)
from ..config import ZETA_SYMBOL, zeta_name
from ..curve import SpectralCurve, y_rational
from ..errors import ConfigError, PrerequisiteError, ZeroDenominatorError
from ..log import LOG_TAG, logger

Topology = Tuple[int, int]


@dataclass
class Correlator:
    """ω_{g,n} = value · dζ_1 ⋯ dζ_n，value 是 ζ_1..ζ_n 的有理函数，系数可含 α̂。"""

    g: int
    n: int
    value: FracElement
    meta: Dict = field(default_factory=dict)

    @property
    def euler(self) -> int:
        return 2 * self.g - 2 + self.n

    def variables(self) -> List[str]:
        return [zeta_name(i) for i in range(1, self.n + 1)]

    def denominator_factors(self) -> List[Tuple[str, int]]:
        """分母的不可约分解，按文本排序。"""
        _, factors = self.value.denom.factor_list()
        return sorted((str(f.as_expr()), m) for f, m in factors)

    def permuted(self, order: Sequence[int]) -> FracElement:
        """把第 i 个变量换成 order[i-1] 号变量。"""
        field_ = self.value.field
        names = symbol_names(field_)
        mapping = {zeta_name(i): field_.gens[names.index(zeta_name(j))] for i, j in enumerate(order, start=1)}
        return substitute(self.value, mapping)

    def to_dict(self) -> Dict:
        return {
            "g": self.g,
            "n": self.n,
            "value": rf_to_json(self.value),
            "text": rf_to_text(self.value),
            "denominator": [{"factor": text, "power": m} for text, m in self.denominator_factors()],
            **({"meta": self.meta} if self.meta else {}),
        }


def bergman(curve: SpectralCurve) -> Correlator:
    """ω_{0,2} = dζ_1 dζ_2/(ζ_1 − ζ_2)²。"""
    z1, z2 = curve.space.gens(zeta_name(1), zeta_name(2))
    return Correlator(0, 2, 1 / (z1 - z2) ** 2)


class CorrelatorTable:
    """(g,n) → ω_{g,n}；只接受按 2g−2+n 递增的写入。"""

    def __init__(self, curve: SpectralCurve):
        self.curve = curve
        self._items: Dict[Topology, Correlator] = {(0, 2): bergman(curve)}

    @property
    def space(self):
        return self.curve.space

    def has(self, g: int, n: int) -> bool:
        return (g, n) in self._items

    def get(self, g: int, n: int) -> Correlator:
        if (g, n) == (0, 1):
            raise ConfigError("ω_{0,1} 不在表中，由谱曲线直接给出")
        if (g, n) not in self._items:
            raise PrerequisiteError(f"ω_{g},{n} 尚未计算")
        return self._items[(g, n)]

    def store(self, correlator: Correlator) -> None:
        key = (correlator.g, correlator.n)
        if correlator.n > self.curve.model.n_max:
            raise ConfigError(f"n={correlator.n} 超过符号 ζ 的个数 {self.curve.model.n_max}")
        self._items[key] = correlator
        logger.debug(f"{LOG_TAG} ω_{key[0]},{key[1]} 已写入")

    def keys(self) -> List[Topology]:
        return sorted(self._items, key=lambda k: (2 * k[0] + k[1], k[0]))

    def values(self, g: int, n: int) -> FracElement:
        return self.get(g, n).value

    def wtilde(self, g: int, n: int) -> FracElement:
        """W̃_{g,n}：ω 除以 ∏ dx(ζ_i)；W̃_{0,1} = α^{r+1} y。"""
        curve = self.curve
        if (g, n) == (0, 1):
            return substitute(y_rational(curve), {ZETA_SYMBOL: curve.space.gen(zeta_name(1))}) / curve.model.alpha
        value = self.values(g, n)
        for i in range(1, n + 1):
            value = value / curve.Q_prime_rational(zeta_name(i))
        return value

    def omega(self, g: int, n: int) -> FracElement:
        """含 (0,1)：ω_{0,1} 的系数为 α^{r+1} y Q′。"""
        if (g, n) == (0, 1):
            return self.wtilde(0, 1) * self.curve.Q_prime_rational(zeta_name(1))
        return self.values(g, n)

    def to_records(self) -> List[Dict]:
        return [self._items[key].to_dict() for key in self.keys()]


def assign(f: FracElement, values: Mapping[str, object]) -> List:
    """f 的每个符号对应的取值，没给出的保持为生成元。"""
    field_ = f.field
    return [values.get(name, gen) for name, gen in zip(symbol_names(field_), field_.gens)]


def place_args(args: Sequence) -> Dict[str, object]:
    return {zeta_name(i): value for i, value in enumerate(args, start=1)}


def series_value(f: FracElement, values: Mapping[str, object], one: LaurentSeries, depth: int) -> LaurentSeries:
    """把部分符号换成级数后求 f，相对精度为 depth。"""
    if not f:
        return one._new((), 0, None)
    args = assign(f, values)
    numer = evaluate_poly(f.numer, args, one)
    denom = evaluate_poly(f.denom, args, one)
    return quotient(numer, denom, depth)


def quotient(numer: LaurentSeries, denom: LaurentSeries, depth: int) -> LaurentSeries:
    if not denom.coeffs:
        raise ZeroDenominatorError("分母级数在已知精度内为零")
    vd = denom.valuation
    prec = numer.valuation - vd + depth
    if numer.prec is not None:
        prec = min(prec, numer.prec - vd)
    return divide_series(numer, denom, prec)


def exact_value(f: FracElement, values: Mapping[str, object], one):
    """符号换成代数元素（商环元素）后的精确值。"""
    args = assign(f, values)
    numer = evaluate_poly(f.numer, args, one)
    denom = evaluate_poly(f.denom, args, one)
    return numer / denom
