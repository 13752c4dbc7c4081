from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.fields import FracElement, FracField
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement

from ..errors import ZeroDenominatorError


def to_scalar(value):
    """整数、"p/q" 字符串、Fraction 统一转为 QQ 元素。"""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            numer, denom = text.split("/", 1)
            return QQ(int(numer), int(denom))
        return QQ(int(text))
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, int):
        return QQ(int(value.numerator), int(value.denominator))
    return QQ.convert(value)


def format_scalar(value) -> str:
    value = to_scalar(value)
    numer, denom = int(QQ.numer(value)), int(QQ.denom(value))
    return str(numer) if denom == 1 else f"{numer}/{denom}"


def symbol_names(field) -> List[str]:
    return [str(s) for s in field.symbols]


def gen_of(field, name: str):
    names = symbol_names(field)
    if name not in names:
        raise KeyError(f"符号 {name} 不在 {names} 中")
    return field.gens[names.index(name)]


class SymbolSpace:
    """有序符号集上的有理函数域 Q(s_1, ..., s_k)。"""

    def __init__(self, names: Iterable[str]):
        ordered = tuple(dict.fromkeys(str(n) for n in names))
        if not ordered:
            raise ValueError("符号空间至少需要一个符号")
        self.names = ordered
        self.field = FracField(ordered, QQ, lex)
        self.ring = self.field.ring
        self._index = {name: i for i, name in enumerate(ordered)}

    def __repr__(self):
        return f"SymbolSpace({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, SymbolSpace) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def __contains__(self, name) -> bool:
        return str(name) in self._index

    def index(self, name: str) -> int:
        return self._index[name]

    def gen(self, name: str) -> FracElement:
        if name not in self._index:
            raise KeyError(f"符号 {name} 不在 {self!r} 中")
        return self.field.gens[self._index[name]]

    def gens(self, *names: str) -> Tuple[FracElement, ...]:
        return tuple(self.gen(n) for n in names)

    def const(self, value) -> FracElement:
        return self.field(to_scalar(value))

    @property
    def zero(self) -> FracElement:
        return self.field.zero

    @property
    def one(self) -> FracElement:
        return self.field.one

    def extend(self, *names: str) -> "SymbolSpace":
        return SymbolSpace(self.names + tuple(names))

    def convert(self, f) -> FracElement:
        """把其他符号空间的元素搬进本空间；所用符号必须都在本空间中。"""
        if isinstance(f, FracElement):
            if f.field == self.field:
                return f
            missing = _used_names(f) - set(self.names)
            if missing:
                raise KeyError(f"符号 {sorted(missing)} 不在 {self!r} 中")
            return self.field.new(f.numer.set_ring(self.ring), f.denom.set_ring(self.ring))
        if isinstance(f, PolyElement):
            return self.field.new(f.set_ring(self.ring), self.ring.one)
        return self.const(f)


def _used_names(f: FracElement) -> set:
    names = symbol_names(f.field)
    used = set()
    for poly in (f.numer, f.denom):
        for monom in poly.itermonoms():
            for i, e in enumerate(monom):
                if e:
                    used.add(names[i])
    return used


def used_symbols(f) -> List[str]:
    names = symbol_names(f.field)
    used = _used_names(f)
    return [n for n in names if n in used]


def rf_normalize(numer: FracElement, denom: FracElement) -> FracElement:
    """约分并令分母首项系数为 1；分母为零时报错。"""
    if not denom:
        raise ZeroDenominatorError("有理函数的分母为零")
    value = numer / denom
    lc = value.denom.LC
    if lc != 1:
        return value.field.raw_new(value.numer.quo_ground(lc), value.denom.quo_ground(lc))
    return value


def canonical(f: FracElement) -> FracElement:
    return rf_normalize(f, f.field.one)


def rf_equal(a, b) -> bool:
    return not (a - b)


def evaluate_poly(poly: PolyElement, values: Sequence, one):
    """按单项式求值多项式，values 可以是任何支持 + * ** 的对象。"""
    cache: List[Dict[int, object]] = [dict() for _ in values]
    total = None
    for monom, coeff in poly.iterterms():
        term = one * coeff
        for i, e in enumerate(monom):
            if e:
                powers = cache[i]
                if e not in powers:
                    powers[e] = values[i] ** e
                term = term * powers[e]
        total = term if total is None else total + term
    if total is None:
        return one * QQ(0)
    return total


def _as_field_element(field, value) -> FracElement:
    if isinstance(value, FracElement):
        if value.field == field:
            return value
        return SymbolSpace(symbol_names(field)).convert(value)
    if isinstance(value, PolyElement):
        return SymbolSpace(symbol_names(field)).convert(value)
    return field(to_scalar(value))


def substitute(f: FracElement, mapping: Mapping[str, object]) -> FracElement:
    """同时代换若干符号；代换后分母为零时报错。"""
    field = f.field
    names = symbol_names(field)
    if not any(name in mapping for name in names):
        return f
    values = [
        _as_field_element(field, mapping[name]) if name in mapping else field.gens[i]
        for i, name in enumerate(names)
    ]
    if all(v.denom.is_ground for v in values):
        ring = field.ring
        pairs = []
        for i, v in enumerate(values):
            if names[i] in mapping:
                pairs.append((ring.gens[i], v.numer.quo_ground(v.denom.LC)))
        numer = f.numer.compose(pairs)
        denom = f.denom.compose(pairs)
        if not denom:
            raise ZeroDenominatorError(f"代换 {sorted(mapping)} 使分母为零")
        return field.new(numer, denom)
    numer = evaluate_poly(f.numer, values, field.one)
    denom = evaluate_poly(f.denom, values, field.one)
    if not denom:
        raise ZeroDenominatorError(f"代换 {sorted(mapping)} 使分母为零")
    return numer / denom


def rename(f: FracElement, mapping: Mapping[str, str]) -> FracElement:
    field = f.field
    return substitute(f, {old: gen_of(field, new) for old, new in mapping.items()})


def derivative(f: FracElement, name: str) -> FracElement:
    return f.diff(gen_of(f.field, name))


def depends_on(f: FracElement, name: str) -> bool:
    return name in _used_names(f)


def univariate_coeffs(poly: PolyElement, name: str) -> List[PolyElement]:
    """按符号 name 的次数展开，返回低次到高次的系数多项式。"""
    ring = poly.ring
    idx = [str(s) for s in ring.symbols].index(name)
    if not poly:
        return []
    out: Dict[int, Dict] = {}
    for monom, coeff in poly.iterterms():
        rest = list(monom)
        k = rest[idx]
        rest[idx] = 0
        out.setdefault(k, {})[tuple(rest)] = coeff
    top = max(out)
    return [ring.from_dict(out.get(k, {})) if k in out else ring.zero for k in range(top + 1)]


def degree_in(f, name: str) -> int:
    """分子次数减分母次数；零函数返回 None。"""
    if isinstance(f, PolyElement):
        return len(univariate_coeffs(f, name)) - 1 if f else None
    if not f:
        return None
    return len(univariate_coeffs(f.numer, name)) - len(univariate_coeffs(f.denom, name))


def _trim(coeffs: List) -> List:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return out


def poly_divmod(numer: Sequence, denom: Sequence) -> Tuple[List, List]:
    """系数列表（低次在前）上的带余除法，系数取自任意域。"""
    num = _trim(numer)
    den = _trim(denom)
    if not den:
        raise ZeroDenominatorError("多项式除以零")
    if len(num) < len(den):
        return [], num
    lead = den[-1]
    quot = [None] * (len(num) - len(den) + 1)
    rem = list(num)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for i, d in enumerate(den):
                rem[k + i] = rem[k + i] - c * d
    rem = _trim(rem[: len(den) - 1])
    return quot, rem


def split_in(f: FracElement, name: str) -> Tuple[FracElement, FracElement]:
    """把 f 拆成关于 name 的多项式部分与真分式部分。"""
    field = f.field
    x = gen_of(field, name)
    num = [field.new(c, field.ring.one) for c in univariate_coeffs(f.numer, name)]
    den = [field.new(c, field.ring.one) for c in univariate_coeffs(f.denom, name)]
    quot, _ = poly_divmod(num, den)
    poly = field.zero
    for k, c in enumerate(quot):
        if c:
            poly += c * x**k
    return poly, f - poly


def polynomial_part(f: FracElement, name: str) -> FracElement:
    return split_in(f, name)[0]


def is_polynomial_in(f: FracElement, name: str) -> bool:
    return len(univariate_coeffs(f.denom, name)) <= 1


def coefficient(f: FracElement, name: str, k: int) -> FracElement:
    """f 关于 name 为多项式时取 name^k 的系数。"""
    if not is_polynomial_in(f, name):
        raise ValueError(f"{name} 出现在分母中，无法直接取系数")
    field = f.field
    coeffs = univariate_coeffs(f.numer, name)
    if k < 0 or k >= len(coeffs):
        return field.zero
    return field.new(coeffs[k], f.denom)


def _poly_to_json(poly: PolyElement) -> List:
    terms = sorted(poly.iterterms(), key=lambda item: item[0], reverse=True)
    return [[list(monom), format_scalar(coeff)] for monom, coeff in terms]


def rf_to_json(f: FracElement) -> Dict:
    f = canonical(f)
    return {
        "symbols": symbol_names(f.field),
        "numerator": _poly_to_json(f.numer),
        "denominator": _poly_to_json(f.denom),
    }


def rf_from_json(data: Mapping, space: Optional[SymbolSpace] = None) -> FracElement:
    source = SymbolSpace(data["symbols"])
    ring = source.ring
    numer = ring.from_dict({tuple(m): to_scalar(c) for m, c in data["numerator"]}) if data["numerator"] else ring.zero
    denom = ring.from_dict({tuple(m): to_scalar(c) for m, c in data["denominator"]})
    value = source.field.new(numer, denom)
    return space.convert(value) if space is not None else value


def rf_to_text(f) -> str:
    if isinstance(f, FracElement):
        return str(f.as_expr())
    return str(f)
