from typing import Dict, Optional, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement

from ..errors import ResidueError, TruncationError
from .rational import univariate_coeffs
from .series import LaurentSeries, divide_series

INFINITY = "inf"


class LocalSeries(LaurentSeries):
    """某一点处局部坐标下的截断 Laurent 级数：有限点 b 用 s = ζ - b，∞ 用 w = 1/ζ。"""

    __slots__ = ("point",)

    def __init__(self, coeffs: Sequence = (), start: int = 0, prec: Optional[int] = None, zero=None, var: str = "s", point=0):
        super().__init__(coeffs, start=start, prec=prec, zero=QQ(0) if zero is None else zero, var=var)
        self.point = point

    def _new(self, coeffs, start, prec):
        return LocalSeries(coeffs, start=start, prec=prec, zero=self.zero, var=self.var, point=self.point)

    def _scalar(self, value):
        return self._new([self.zero + value], 0, None)

    @classmethod
    def local_from_terms(cls, terms: Dict[int, object], prec: Optional[int], zero, var: str = "s", point=0) -> "LocalSeries":
        live = {k: v for k, v in terms.items() if v and (prec is None or k < prec)}
        if not live:
            return cls((), prec=prec, zero=zero, var=var, point=point)
        lo, hi = min(live), max(live)
        return cls([live.get(k, zero) for k in range(lo, hi + 1)], start=lo, prec=prec, zero=zero, var=var, point=point)

    @property
    def at_infinity(self) -> bool:
        return isinstance(self.point, str) and self.point == INFINITY


def coordinate(point, zero, var: str = "s") -> LocalSeries:
    """点 point 处的 ζ 本身：b + s，或 ∞ 处的 1/w。"""
    one = zero + 1
    if isinstance(point, str) and point == INFINITY:
        return LocalSeries([one], start=-1, zero=zero, var=var, point=point)
    return LocalSeries([zero + point, one], zero=zero, var=var, point=point)


def evaluate_univariate(coeffs: Sequence, x: LaurentSeries) -> LaurentSeries:
    """Horner 法求 Σ c_k x^k。"""
    acc = x._new((), 0, None)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def series_compose(outer: LaurentSeries, inner: LocalSeries) -> LocalSeries:
    """outer(inner(s))；inner 赋值非正时 outer 必须是精确多项式。"""
    v = inner.valuation
    if not inner.coeffs:
        raise TruncationError("内层级数没有已知首项")
    if v <= 0 and (not outer.is_exact or outer.start < 0):
        raise TruncationError(f"内层赋值 {v} 只允许与精确多项式复合")
    if not outer.coeffs:
        if outer.is_exact:
            return inner._new((), 0, None)
        return inner._new((), 0, outer.prec * v)
    body = [outer.coefficient(outer.start + i) for i in range(len(outer.coeffs))]
    result = evaluate_univariate(body, inner)
    if outer.start:
        result = result * inner ** outer.start
    if outer.prec is not None:
        result = result.truncate(outer.prec * v)
    return result


def series_reversion(f: LaurentSeries, prec: Optional[int] = None) -> LocalSeries:
    """f 有单零点时求 g 使 f(g(s)) = s。"""
    if not f.coeffs or f.start != 1:
        raise TruncationError(f"级数反演要求赋值为 1，实际为 {f.valuation}")
    c1 = f.coefficient(1)
    if not c1:
        raise TruncationError("一次项系数为零，无法反演")
    target = f.prec if f.prec is not None else prec
    point = getattr(f, "point", 0)
    zero = f.zero
    if target is None:
        if len(f.coeffs) == 1:
            return LocalSeries([(zero + 1) / c1], start=1, zero=zero, var=f.var, point=point)
        raise TruncationError("精确级数反演需要给出截断阶")
    if prec is not None:
        target = min(target, prec)
    terms = {1: (zero + 1) / c1}
    for k in range(2, target):
        g = LocalSeries.local_from_terms(terms, prec=k + 1, zero=zero, var=f.var, point=point)
        error = series_compose(f, g).coefficient(k)
        if error:
            terms[k] = -error * terms[1]
    return LocalSeries.local_from_terms(terms, prec=target, zero=zero, var=f.var, point=point)


def residue_at(f: LocalSeries):
    """f 为局部坐标下的微分系数；Res_{ζ=0} dζ/ζ = 1，Res_{ζ=∞} dζ/ζ = -1。"""
    try:
        if f.at_infinity:
            return -f.coefficient(1)
        return f.coefficient(-1)
    except TruncationError as exc:
        raise ResidueError(f"截断阶 {f.prec} 不足以读出留数") from exc


def expand_rational(f: FracElement, name: str, point, prec: int, zero=None, var: str = "s") -> LocalSeries:
    """把 f 作为 name 的有理函数在 point 处展开；有限点系数可以落在扩张环中。"""
    field = f.field
    if zero is None:
        zero = field.zero
    num = [field.new(c, field.ring.one) for c in univariate_coeffs(f.numer, name)]
    den = [field.new(c, field.ring.one) for c in univariate_coeffs(f.denom, name)]
    if isinstance(point, str) and point == INFINITY:
        numer = LocalSeries([zero + c for c in reversed(num)], start=-(len(num) - 1), zero=zero, var=var, point=point)
        denom = LocalSeries([zero + c for c in reversed(den)], start=-(len(den) - 1), zero=zero, var=var, point=point)
    else:
        x = coordinate(point, zero, var)
        numer = evaluate_univariate(num, x)
        denom = evaluate_univariate(den, x)
    if not numer.coeffs:
        return LocalSeries((), prec=prec, zero=zero, var=var, point=point)
    return divide_series(numer, denom, prec)


def residue_of_rational(f: FracElement, name: str, point, zero=None):
    """有理函数 f dζ 在 point 处的留数，展开阶数由极点阶数决定。"""
    if isinstance(point, str) and point == INFINITY:
        return residue_at(expand_rational(f, name, point, 2, zero=zero))
    return residue_at(expand_rational(f, name, point, 0, zero=zero))
