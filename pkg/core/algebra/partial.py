from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from sympy.polys.fields import FracElement

from ..errors import FieldTowerError
from .fields import QuotientElement, root_rings
from .local import expand_rational
from .rational import gen_of, split_in, univariate_coeffs


@dataclass
class PartialFractions:
    """f = polynomial + Σ c/(ζ-b)^k；b 取自扩张环时代表其全部共轭根。"""

    var: str
    polynomial: FracElement
    terms: List[Tuple[object, int, object]] = dc_field(default_factory=list)

    def recombine(self) -> FracElement:
        total = self.polynomial
        x = gen_of(total.field, self.var)
        for root, k, coeff in self.terms:
            if isinstance(root, QuotientElement):
                ring = root.ring
                piece = coeff * ((ring.scalar(x) - root) ** (-k))
                total = total + ring.trace(piece)
            else:
                total = total + coeff / (x - root) ** k
        return total


def _root_degree(root) -> int:
    return root.ring.degree if isinstance(root, QuotientElement) else 1


def partial_fractions(f: FracElement, var: str, roots: Optional[Sequence] = None) -> PartialFractions:
    """按给定根做部分分式；根未给出时取分母在 K 上每个不可约因子的一般根。"""
    polynomial, proper = split_in(f, var)
    denom = f.field.new(f.denom, f.field.ring.one)
    if roots is None:
        roots = [ring.gen for ring in root_rings(denom, var)]
    terms = []
    covered = 0
    for root in roots:
        zero = root.ring.zero if isinstance(root, QuotientElement) else f.field.zero
        local = expand_rational(proper, var, root, 0, zero=zero)
        order = -local.valuation if local.coeffs and local.valuation < 0 else 0
        if order == 0:
            continue
        covered += order * _root_degree(root)
        for k in range(1, order + 1):
            coeff = local.coefficient(-k)
            if coeff:
                terms.append((root, k, coeff))
    degree = len(univariate_coeffs(f.denom, var)) - 1
    if covered != degree:
        raise FieldTowerError(
            f"分母关于 {var} 的次数为 {degree}，给定的根只覆盖 {covered}",
            denominator=f.denom,
        )
    return PartialFractions(var=var, polynomial=polynomial, terms=terms)
