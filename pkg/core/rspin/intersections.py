"""r-Airy 曲线的关联子与 r-spin 相交数 ⟨∏τ_{d,a}⟩_g 之间的互换。

ω_{g,n} = (−1)^g r^{g−1+n} α̂^{2g−2+n} Σ ∏_i c_{d_i+1,a_i} dζ_i/ζ_i^{r d_i + a_i + 2} ⟨∏τ_{d_i,a_i}⟩_g
"""
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ

from ..algebra import SymbolSpace, format_scalar, symbol_names
from ..config import ALPHA_SYMBOL, zeta_name
from ..errors import ExpansionError
from ..log import LOG_TAG, logger
from ..toprec import Correlator, higher_recursion, rairy_curve
from .times import TimesVector, c_coeff

Insertion = Tuple[int, int]
InsertionKey = Tuple[Insertion, ...]


def selection_rule(r: int, g: int, key: Sequence[Insertion]) -> bool:
    """(r−2)(g−1) + Σ(a_i + r d_i) = r(3g−3+n)。"""
    n = len(key)
    return (r - 2) * (g - 1) + sum(a + r * d for d, a in key) == r * (3 * g - 3 + n)


def insertion_text(key: Sequence[Insertion]) -> str:
    return " ".join(f"τ{d},{a}" for d, a in key)


def _prefactor(r: int, g: int, n: int):
    sign = -1 if g % 2 else 1
    return QQ(sign) * QQ(r) ** (g - 1 + n)


@dataclass
class IntersectionTable:
    """亏格 g 的相交数，键是按 (d, a) 排序的插入多重集。"""

    r: int
    g: int
    entries: Dict[InsertionKey, object] = field(default_factory=dict)
    filled: set = field(default_factory=set)
    dimension_filter: bool = True

    def get(self, key: Iterable[Insertion]):
        return self.entries.get(tuple(sorted(key)), QQ(0))

    def add(self, key: Iterable[Insertion], value) -> None:
        key = tuple(sorted(key))
        if not value:
            return
        if self.dimension_filter and not selection_rule(self.r, self.g, key):
            raise ExpansionError(f"⟨{insertion_text(key)}⟩_{self.g} = {format_scalar(value)} 不满足维数条件")
        previous = self.entries.get(key)
        if previous is not None and previous != value:
            raise ExpansionError(
                f"⟨{insertion_text(key)}⟩_{self.g} 出现两个不同的值 {format_scalar(previous)}、{format_scalar(value)}"
            )
        self.entries[key] = value

    def keys(self, n: Optional[int] = None) -> List[InsertionKey]:
        return sorted((k for k in self.entries if n is None or len(k) == n), key=lambda k: (len(k), k))

    def rows(self) -> List[List[str]]:
        """CSV 行：g, n, 插入 "d,a;d,a", 值 p/q。"""
        return [
            [str(self.g), str(len(key)), ";".join(f"{d},{a}" for d, a in key), format_scalar(self.entries[key])]
            for key in self.keys()
        ]

    def to_dict(self) -> Dict:
        return {
            "r": self.r,
            "g": self.g,
            "filled": sorted(self.filled),
            "entries": [
                {"insertions": [[d, a] for d, a in key], "value": format_scalar(self.entries[key])}
                for key in self.keys()
            ],
        }


def _constant(f):
    """f 不含任何符号时返回其 QQ 值，否则返回 None。"""
    if not f.numer.is_ground or not f.denom.is_ground:
        return None
    return QQ.convert(f.numer.LC) / QQ.convert(f.denom.LC)


def laurent_terms(value, names: Sequence[str]) -> Dict[Tuple[int, ...], object]:
    """value 关于 names 的 Laurent 多项式展开：指数向量 → 其余符号的系数。"""
    field_ = value.field
    ring = field_.ring
    all_names = symbol_names(field_)
    index = [all_names.index(name) for name in names]

    denom_terms = value.denom.terms()
    shift = [denom_terms[0][0][i] for i in index]
    if any([monom[i] for i in index] != shift for monom, _ in denom_terms):
        raise ExpansionError(f"分母不是 {', '.join(names)} 的单项式：{value.denom.as_expr()}")

    def strip(monom):
        monom = list(monom)
        for i in index:
            monom[i] = 0
        return tuple(monom)

    rest = field_.new(ring.from_dict({strip(m): c for m, c in denom_terms}), ring.one)
    grouped: Dict[Tuple[int, ...], dict] = {}
    for monom, coeff in value.numer.terms():
        exps = tuple(monom[i] - s for i, s in zip(index, shift))
        bucket = grouped.setdefault(exps, {})
        key = strip(monom)
        bucket[key] = bucket.get(key, 0) + coeff
    return {exps: field_.new(ring.from_dict(bucket), ring.one) / rest for exps, bucket in sorted(grouped.items())}


def extract_intersections(correlator: Correlator, r: int, table: Optional[IntersectionTable] = None) -> IntersectionTable:
    """读出 ω_{g,n} 在 ∞ 处展开的系数；基以外的项说明上游有误。"""
    g, n = correlator.g, correlator.n
    table = table or IntersectionTable(r=r, g=g)
    if table.g != g or table.r != r:
        raise ExpansionError(f"表格是 (r={table.r}, g={table.g})，关联子是 (r={r}, g={g})")
    value = correlator.value
    alpha = value.field.gens[symbol_names(value.field).index(ALPHA_SYMBOL)]
    scale = alpha ** (2 * g - 2 + n)
    prefactor = _prefactor(r, g, n)

    for exps, coeff in laurent_terms(value, correlator.variables()).items():
        if not coeff:
            continue
        if any(e > -2 for e in exps):
            raise ExpansionError(f"ω_{g},{n} 含基以外的项 ζ^{list(exps)}")
        key = []
        weight = prefactor
        for e in exps:
            d, a = divmod(-e - 2, r)
            key.append((d, a))
            weight *= c_coeff(d + 1, a, r)
        number = _constant(coeff / scale)
        if number is None:
            raise ExpansionError(f"ω_{g},{n} 在 ζ^{list(exps)} 处的系数不是 α̂^{2 * g - 2 + n} 的有理倍数")
        table.add(key, number / weight)
    table.filled.add(n)
    logger.debug(f"{LOG_TAG} 从 ω_{g},{n} 读出 {len(table.keys(n))} 个相交数（r={r}）")
    return table


def _splits(key: InsertionKey, n: int):
    """把多重集拆成有序的 n 个标记插入与剩下的多重集。"""
    seen = set()
    for picked in permutations(range(len(key)), n):
        marked = tuple(key[i] for i in picked)
        rest = tuple(sorted(key[i] for i in range(len(key)) if i not in picked))
        if (marked, rest) in seen:
            continue
        seen.add((marked, rest))
        yield marked, rest


def _multiplicity_factorial(rest: InsertionKey) -> int:
    total = 1
    for item in set(rest):
        for k in range(2, rest.count(item) + 1):
            total *= k
    return total


def omega_int(
    g: int,
    n: int,
    table: IntersectionTable,
    times: Optional[TimesVector] = None,
    space: Optional[SymbolSpace] = None,
) -> Correlator:
    """由相交数重建 ω_{g,n}（Q = ζ^r）；非零时间按表中已有的更长插入截断求和。"""
    r = table.r
    if space is None:
        extra = list(times.space.names) if times is not None else []
        space = SymbolSpace([ALPHA_SYMBOL] + extra + [zeta_name(i) for i in range(1, n + 1)])
    zetas = [space.gen(zeta_name(i)) for i in range(1, n + 1)]
    alpha = space.gen(ALPHA_SYMBOL)
    # dQ/Q^{d+1+(j+1)/r} = r ζ^{−(rd+j+2)} dζ
    scale = space.const(_prefactor(r, g, n)) * alpha ** (2 * g - 2 + n)

    total = space.zero
    for key in table.keys():
        if len(key) < n:
            continue
        for marked, rest in _splits(key, n):
            weight = space.const(table.entries[key])
            for d, j in rest:
                t = times.get(d, j) if times is not None else 0
                if not t:
                    weight = space.zero
                    break
                weight = weight * space.convert(t)
            if not weight:
                continue
            term = weight / _multiplicity_factorial(rest)
            for zeta, (d, j) in zip(zetas, marked):
                term = term * space.const(c_coeff(d + 1, j, r)) / zeta ** (r * d + j + 2)
            total += term
    return Correlator(g, n, scale * total, meta={"source": "intersections", "r": r})


def intersection_numbers(r: int, topologies: Iterable[Tuple[int, int]]) -> Dict[int, IntersectionTable]:
    """在 r-Airy 曲线（全部 λ = ∞）上跑高阶递归并读出相交数，按亏格分表。"""
    topologies = sorted(set(topologies), key=lambda gn: (2 * gn[0] - 2 + gn[1], gn[0]))
    n_max = max([3] + [n for _, n in topologies])
    correlators = higher_recursion(rairy_curve(r, n_max), topologies)
    tables: Dict[int, IntersectionTable] = {}
    for g, n in topologies:
        table = tables.setdefault(g, IntersectionTable(r=r, g=g))
        extract_intersections(correlators.get(g, n), r, table)
    return tables
