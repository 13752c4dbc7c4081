from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy.polys.fields import FracElement

from ..algebra import (
    AlphaSeries,
    degree_in,
    derivative,
    divide_series,
    evaluate_univariate,
    polynomial_part,
    rf_to_text,
    series_substitute,
    substitute,
    univariate_coeffs,
)
from ..config import ALPHA_SYMBOL, ZETA_SYMBOL, zeta_name
from ..errors import ConfigError, NonGenericError
from ..log import LOG_TAG, logger
from ..model import Model


def curve_model(model: Model) -> Model:
    """在模型的符号空间里补上 ζ 和 ζ_1..ζ_{max(2, n_max)}。"""
    wanted = [ZETA_SYMBOL] + [zeta_name(i) for i in range(1, max(2, model.n_max) + 1)]
    names = [name for name in wanted if name not in model.space]
    if not names:
        return model
    return model.with_space(model.space.extend(*names))


def zeta_coeffs(f: FracElement, name: str = ZETA_SYMBOL) -> List[FracElement]:
    """f 为 name 的多项式时，按次数从低到高给出系数。"""
    field_ = f.field
    return [field_.new(c, field_.ring.one) / f.denom for c in univariate_coeffs(f.numer, name)]


def alpha_unit(model: Model) -> AlphaSeries:
    return AlphaSeries([model.space.one], start=1, zero=model.space.zero)


def _exact(terms: Dict[int, object], model: Model) -> AlphaSeries:
    return AlphaSeries.from_terms(terms, prec=None, zero=model.space.zero, var=ALPHA_SYMBOL)


def _collapse(terms: Dict[int, object], model: Model) -> FracElement:
    """Σ_d α̂^d c_d 收成含符号 α̂ 的有理函数。"""
    total = model.space.zero
    a = model.alpha
    for k, c in terms.items():
        total += c * a**k
    return total


def lambda_groups(model: Model) -> List[Tuple[object, int]]:
    """相同的 λ 合并计重数；V″(λ)=0 或不同 λ 的 V′ 取值重合时报错。"""
    groups: List[Tuple[object, int]] = []
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        for k, (other, count) in enumerate(groups):
            if other == lam:
                groups[k] = (other, count + 1)
                break
        else:
            if not model.dV(lam, 2):
                raise NonGenericError(f"V″(λ_{j}) = 0")
            for other, _ in groups:
                if model.dV(other) == model.dV(lam):
                    raise NonGenericError(f"λ_{j} 与另一个 λ 的 V′ 取值重合")
            groups.append((lam, 1))
    return groups


@dataclass
class SpectralCurve:
    """x = Q(ζ)，y = ζ + α̂ Σ_j 1/(Q′(ξ_j)(ζ−ξ_j))，各量截断到 α̂^order。

    Q 的系数是 ζ 的多项式；相同的 λ 合并为一个 ξ，并记重数。
    """

    model: Model
    order: int
    Q: AlphaSeries
    xi: List[AlphaSeries]
    groups: List[Tuple[object, int]]
    y: AlphaSeries
    meta: Dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return self.model.r

    @property
    def space(self):
        return self.model.space

    @property
    def zeta(self):
        return self.space.gen(ZETA_SYMBOL)

    def Q_rational(self, name: str = ZETA_SYMBOL) -> FracElement:
        value = _collapse(self.Q.terms(), self.model)
        if name != ZETA_SYMBOL:
            value = substitute(value, {ZETA_SYMBOL: self.space.gen(name)})
        return value

    def Q_prime_rational(self, name: str = ZETA_SYMBOL) -> FracElement:
        return derivative(self.Q_rational(name), name)

    def xi_rational(self, k: int) -> FracElement:
        return _collapse(self.xi[k].terms(), self.model)

    def Q_coefficients(self) -> List[AlphaSeries]:
        """Q(ζ) = Σ_k Q_k ζ^k 中的 Q_0..Q_r，各为 α̂ 级数。"""
        per_power: List[Dict[int, object]] = [dict() for _ in range(self.r + 1)]
        for delta, poly in self.Q.terms().items():
            for k, c in enumerate(zeta_coeffs(poly)):
                if c:
                    per_power[k][delta] = c
        return [
            AlphaSeries.from_terms(terms, prec=self.order + 1, zero=self.space.zero)
            for terms in per_power
        ]

    def residue_weight(self, k: int) -> AlphaSeries:
        """y 在 ξ_k 处极点的系数 m_k α̂ / Q′(ξ_k)。"""
        if self.order < 1:
            return AlphaSeries((), prec=self.order + 1, zero=self.space.zero)
        qp = series_substitute(
            self.Q_prime_rational(),
            {ZETA_SYMBOL: self.xi[k], ALPHA_SYMBOL: alpha_unit(self.model)},
            self.order,
        )
        count = self.groups[k][1]
        return divide_series(_exact({0: self.space.one * count}, self.model), qp, self.order).shift(1)

    def to_dict(self) -> Dict:
        return {
            "r": self.r,
            "order": self.order,
            "Q": {str(d): rf_to_text(c) for d, c in sorted(self.Q.terms().items())},
            "xi": [
                {
                    "lambda": rf_to_text(lam),
                    "multiplicity": count,
                    "series": {str(d): rf_to_text(c) for d, c in sorted(series.terms().items())},
                }
                for (lam, count), series in zip(self.groups, self.xi)
            ],
        }


def _y_series(model: Model, Q_terms: Dict[int, object], xi_terms: List[Dict[int, object]], groups, prec: int) -> AlphaSeries:
    """由已知的 Q、ξ 得到 y，精确到 α̂^{prec}（不含）。"""
    zeta = model.space.gen(ZETA_SYMBOL)
    y = AlphaSeries([zeta], zero=model.space.zero).truncate(prec)
    if prec < 2 or not groups:
        return y
    inner = prec - 1
    a = alpha_unit(model)
    Q_prime = derivative(_collapse(Q_terms, model), ZETA_SYMBOL)
    one = _exact({0: model.space.one}, model)
    for (lam, count), terms in zip(groups, xi_terms):
        xi = _exact(terms, model)
        qp = series_substitute(Q_prime, {ZETA_SYMBOL: xi, ALPHA_SYMBOL: a}, inner)
        gap = -xi + zeta
        term = divide_series(one, qp * gap, inner)
        y = y + (term * count).shift(1)
    return y


def solve_curve(model: Model, order: int) -> SpectralCurve:
    """交替求 [Q]_{d+1}（V′(y) 在 ∞ 处的多项式部分）与 [ξ_j]_{d+1}（[Q(ξ_j)]_{d+1}=0）。"""
    if order < 0:
        raise ConfigError(f"截断阶必须非负，实际为 {order}")
    model = curve_model(model)
    groups = lambda_groups(model)
    zeta = model.space.gen(ZETA_SYMBOL)
    potential = [model.coeff(j) for j in range(1, model.r + 2)]
    a = alpha_unit(model)

    Q_terms: Dict[int, object] = {0: model.dV(zeta)}
    xi_terms: List[Dict[int, object]] = [{0: lam} for lam, _ in groups]
    for d in range(order):
        y = _y_series(model, Q_terms, xi_terms, groups, d + 2)
        image = evaluate_univariate(potential, y)
        Q_terms[d + 1] = polynomial_part(image.coefficient(d + 1), ZETA_SYMBOL)
        Q_full = _collapse(Q_terms, model)
        for k, (lam, _) in enumerate(groups):
            at_xi = series_substitute(Q_full, {ZETA_SYMBOL: _exact(xi_terms[k], model), ALPHA_SYMBOL: a}, d + 2)
            xi_terms[k][d + 1] = -at_xi.coefficient(d + 1) / model.dV(lam, 2)
        logger.debug(f"{LOG_TAG} 谱曲线 α̂^{d + 1} 阶完成")

    curve = SpectralCurve(
        model=model,
        order=order,
        Q=AlphaSeries.from_terms(Q_terms, prec=order + 1, zero=model.space.zero),
        xi=[AlphaSeries.from_terms(terms, prec=order + 1, zero=model.space.zero) for terms in xi_terms],
        groups=groups,
        y=_y_series(model, Q_terms, xi_terms, groups, order + 1),
    )
    logger.info(f"{LOG_TAG} 谱曲线求解完成：r={model.r}，{len(groups)} 个 ξ，截断 α̂^{order}")
    return curve


def y_at(curve: SpectralCurve, value) -> AlphaSeries:
    """y 在给定 ζ 处的值；ζ 落在某个 λ_j 上时分母为零。"""
    return curve.y.map_coeffs(lambda c: substitute(c, {ZETA_SYMBOL: value}))


def omega01(curve: SpectralCurve) -> AlphaSeries:
    """ω_{0,1} = α^{r+1} y dx 的 dζ 系数，α^{r+1} = α̂^{-1}。"""
    Q_prime = curve.Q.map_coeffs(lambda c: derivative(c, ZETA_SYMBOL))
    return (curve.y * Q_prime).shift(-1)


def omega02(curve: SpectralCurve) -> FracElement:
    """dζ_1 dζ_2 前的系数 1/(ζ_1 − ζ_2)²。"""
    z1, z2 = curve.space.gens(zeta_name(1), zeta_name(2))
    return 1 / (z1 - z2) ** 2


def zeta_of_z(curve: SpectralCurve, name: str, prec: Optional[int] = None) -> AlphaSeries:
    """由 Q(ζ) = V′(z)、[ζ]_0 = z 解出 ζ(z)，z 取符号 name。"""
    model = curve.model
    prec = curve.order + 1 if prec is None else min(prec, curve.order + 1)
    z = model.space.gen(name)
    a = alpha_unit(model)
    Q_full = curve.Q_rational()
    slope = model.dV(z, 2)
    terms: Dict[int, object] = {0: z}
    for d in range(1, prec):
        at = series_substitute(Q_full, {ZETA_SYMBOL: _exact(terms, model), ALPHA_SYMBOL: a}, d + 1)
        terms[d] = -at.coefficient(d) / slope
    return AlphaSeries.from_terms(terms, prec=prec, zero=model.space.zero)


@dataclass
class ShiftedCurve:
    """λ 全部相同时平移 ζ = u + ξ：x̃(u) = Q(u+ξ)，ỹ(u) = u + c/u。"""

    x: AlphaSeries
    y: AlphaSeries
    weight: AlphaSeries


def shifted_curve(curve: SpectralCurve) -> ShiftedCurve:
    if len(curve.groups) != 1:
        raise ConfigError("平移形式只适用于全部 λ 相同的情形")
    model = curve.model
    u = model.u
    prec = curve.order + 1
    xi = curve.xi[0]
    x = series_substitute(
        curve.Q_rational(),
        {ZETA_SYMBOL: xi + u, ALPHA_SYMBOL: alpha_unit(model)},
        prec,
    )
    weight = curve.residue_weight(0)
    y = AlphaSeries([u], zero=model.space.zero).truncate(prec) + weight * (1 / u)
    return ShiftedCurve(x=x, y=y, weight=weight)


def vanishes_at_infinity(value, name: str = ZETA_SYMBOL) -> bool:
    """value 在 name → ∞ 处只有负幂。"""
    degree = degree_in(value, name)
    return degree is None or degree < 0
