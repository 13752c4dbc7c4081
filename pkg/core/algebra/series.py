from typing import Callable, Dict, List, Mapping, Optional, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement

from ..config import ALPHA_SYMBOL
from ..errors import TruncationError, ZeroDenominatorError
from .rational import evaluate_poly, symbol_names


def _prec_min(*values: Optional[int]) -> Optional[int]:
    known = [v for v in values if v is not None]
    return min(known) if known else None


class LaurentSeries:
    """截断 Laurent 级数 Σ c_k t^k，prec 为绝对精度（t^prec 及以后未知）；prec=None 表示精确有限和。"""

    __slots__ = ("start", "coeffs", "prec", "zero", "var")

    def __init__(self, coeffs: Sequence = (), start: int = 0, prec: Optional[int] = None, zero=QQ(0), var: str = "t"):
        items = list(coeffs)
        lead = 0
        while lead < len(items) and not items[lead]:
            lead += 1
        start += lead
        items = items[lead:]
        if prec is not None:
            items = items[: max(prec - start, 0)]
        while items and not items[-1]:
            items.pop()
        if not items:
            start = prec if prec is not None else 0
        self.start = start
        self.coeffs = tuple(items)
        self.prec = prec
        self.zero = zero
        self.var = var

    def _new(self, coeffs, start, prec):
        return type(self)(coeffs, start=start, prec=prec, zero=self.zero, var=self.var)

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], prec: Optional[int] = None, zero=QQ(0), var: str = "t"):
        live = {k: v for k, v in terms.items() if v and (prec is None or k < prec)}
        if not live:
            return cls((), prec=prec, zero=zero, var=var)
        lo, hi = min(live), max(live)
        return cls([live.get(k, zero) for k in range(lo, hi + 1)], start=lo, prec=prec, zero=zero, var=var)

    def __repr__(self):
        tail = f" + O({self.var}^{self.prec})" if self.prec is not None else ""
        terms = " + ".join(f"({c})*{self.var}^{self.start + i}" for i, c in enumerate(self.coeffs) if c)
        return f"{type(self).__name__}({terms or '0'}{tail})"

    @property
    def valuation(self) -> Optional[int]:
        if self.coeffs:
            return self.start
        return self.prec

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, k: int):
        if self.prec is not None and k >= self.prec:
            raise TruncationError(f"读取 {self.var}^{k} 超出截断阶 {self.prec}")
        i = k - self.start
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.zero

    __getitem__ = coefficient

    def terms(self) -> Dict[int, object]:
        return {self.start + i: c for i, c in enumerate(self.coeffs) if c}

    def truncate(self, prec: int):
        return self._new(self.coeffs, self.start, _prec_min(self.prec, prec))

    def shift(self, k: int):
        return self._new(self.coeffs, self.start + k, None if self.prec is None else self.prec + k)

    def map_coeffs(self, fn: Callable):
        return self._new([fn(c) for c in self.coeffs], self.start, self.prec)

    def _is_series(self, other) -> bool:
        return isinstance(other, LaurentSeries)

    def __neg__(self):
        return self._new([-c for c in self.coeffs], self.start, self.prec)

    def __add__(self, other):
        if not self._is_series(other):
            other = self._scalar(other)
        prec = _prec_min(self.prec, other.prec)
        if not self.coeffs and not other.coeffs:
            return self._new((), 0, prec)
        starts = [s.start for s in (self, other) if s.coeffs]
        lo = min(starts)
        hi = max(s.start + len(s.coeffs) for s in (self, other) if s.coeffs)
        if prec is not None:
            hi = min(hi, prec)
        out = [self.zero] * max(hi - lo, 0)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.start + i - lo
                if 0 <= k < len(out):
                    out[k] = out[k] + c
        return self._new(out, lo, prec)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scalar(self, value):
        return self._new([self.zero + value], 0, None)

    def __mul__(self, other):
        if not self._is_series(other):
            if not other:
                return self._new((), 0, None)
            return self._new([c * other for c in self.coeffs], self.start, self.prec)
        if (not self.coeffs and self.prec is None) or (not other.coeffs and other.prec is None):
            return self._new((), 0, None)
        va, vb = self.valuation, other.valuation
        candidates = []
        if other.prec is not None:
            candidates.append(va + other.prec)
        if self.prec is not None:
            candidates.append(vb + self.prec)
        prec = min(candidates) if candidates else None
        if not self.coeffs or not other.coeffs:
            return self._new((), 0, prec)
        lo = self.start + other.start
        hi = self.start + len(self.coeffs) + other.start + len(other.coeffs) - 1
        if prec is not None:
            hi = min(hi, prec)
        out = [self.zero] * max(hi - lo, 0)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                if y:
                    out[k] = out[k] + x * y
        return self._new(out, lo, prec)

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDenominatorError(f"{self.var} 级数的首项为零，无法求逆")
        v = self.start
        if self.prec is None:
            if len(self.coeffs) == 1:
                return self._new([_reciprocal(self.coeffs[0])], -v, None)
            raise TruncationError(f"精确 {self.var} 级数求逆需要先指定截断阶")
        rel = self.prec - v
        a = self.coeffs
        lead = a[0]
        inv_lead = _reciprocal(lead)
        out = [inv_lead]
        for k in range(1, rel):
            total = self.zero
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i]:
                    total = total + a[i] * out[k - i]
            out.append(-total * inv_lead)
        return self._new(out, -v, -v + rel)

    def __truediv__(self, other):
        if self._is_series(other):
            return self * other.inverse()
        return self * _reciprocal(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self._new([self._one()], 0, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _one(self):
        return self.zero + 1

    def derivative(self):
        out = [c * (self.start + i) for i, c in enumerate(self.coeffs)]
        return self._new(out, self.start - 1, None if self.prec is None else self.prec - 1)

    def unit_sqrt(self):
        """首项系数为 1、赋值为 0 的级数平方根。"""
        if self.start != 0 or not self.coeffs or self.coeffs[0] != 1:
            raise TruncationError("平方根只对 1 + O(t) 形式的级数定义")
        if self.prec is None:
            raise TruncationError(f"精确 {self.var} 级数开方需要先指定截断阶")
        a = self.coeffs
        out = [a[0]]
        for k in range(1, self.prec):
            total = a[k] if k < len(a) else self.zero
            for i in range(1, k):
                total = total - out[i] * out[k - i]
            out.append(total * QQ(1, 2))
        return self._new(out, 0, self.prec)

    def is_zero(self) -> bool:
        return not self.coeffs


def _reciprocal(value):
    if hasattr(value, "inverse"):
        return value.inverse()
    if not value:
        raise ZeroDenominatorError("除以零")
    if isinstance(value, int):
        return QQ(1, value)
    return 1 / value


class AlphaSeries(LaurentSeries):
    """分级记账符号 α̂ = α^{-(r+1)} 的截断级数。"""

    __slots__ = ()

    def __init__(self, coeffs: Sequence = (), start: int = 0, prec: Optional[int] = None, zero=QQ(0), var: str = ALPHA_SYMBOL):
        super().__init__(coeffs, start=start, prec=prec, zero=zero, var=var)

    def to_rational(self, field) -> FracElement:
        """把已知项收成 field 中关于 α̂ 的有理函数，field 须含符号 a。"""
        a = field.gens[symbol_names(field).index(self.var)]
        total = field.zero
        for k, c in self.terms().items():
            total += field(c) * a**k if not isinstance(c, FracElement) or c.field != field else c * a**k
        return total


def divide_series(numer: LaurentSeries, denom: LaurentSeries, prec: int) -> LaurentSeries:
    """numer/denom 精确到绝对精度 prec；精确分母按需截断。"""
    if not numer.coeffs:
        return numer._new((), 0, prec)
    vn, vd = numer.valuation, denom.valuation
    if denom.is_exact:
        denom = denom.truncate(max(prec + 2 * vd - vn, vd + 1))
    return (numer * denom.inverse()).truncate(prec)


def alpha_from_rational(f: FracElement, prec: int, name: str = ALPHA_SYMBOL) -> AlphaSeries:
    """把含符号 α̂ 的有理函数在 α̂=0 处展开到 prec，系数仍在 f 的域中。"""
    field = f.field
    idx = symbol_names(field).index(name)

    def expand(poly):
        terms: Dict[int, object] = {}
        for monom, coeff in poly.iterterms():
            rest = list(monom)
            k = rest[idx]
            rest[idx] = 0
            part = field.new(field.ring.from_dict({tuple(rest): coeff}), field.ring.one)
            terms[k] = terms[k] + part if k in terms else part
        return AlphaSeries.from_terms(terms, prec=None, zero=field.zero, var=name)

    return divide_series(expand(f.numer), expand(f.denom), prec)


def series_substitute(f: FracElement, values: Mapping[str, LaurentSeries], prec: int) -> AlphaSeries:
    """把 α̂ 级数代入有理函数 f 的若干符号，其余符号保持为域元素。"""
    field = f.field
    names = symbol_names(field)
    one = AlphaSeries([field.one], prec=None, zero=field.zero)
    args: List = []
    for i, name in enumerate(names):
        if name in values:
            args.append(values[name].truncate(prec))
        else:
            args.append(field.gens[i])
    numer = evaluate_poly(f.numer, args, one)
    denom = evaluate_poly(f.denom, args, one)
    return divide_series(numer, denom, prec)
