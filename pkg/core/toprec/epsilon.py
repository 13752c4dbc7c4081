"""V′_ε(z) = z^r − r ε^{r−1} z 的形变族、r-Airy 曲线，以及 φ_{ℓ,m} 基。"""
from dataclasses import replace
from typing import Dict, Iterable, List, Tuple

from sympy.polys.fields import FracElement

from ..algebra import (
    PartialFractions,
    canonical,
    degree_in,
    depends_on,
    derivative,
    is_polynomial_in,
    partial_fractions,
    poly_divmod,
    rf_to_text,
    substitute,
    symbol_names,
)
from ..config import EPSILON_SYMBOL, zeta_name
from ..curve import SpectralCurve, solve_curve, zeta_coeffs
from ..errors import FieldTowerError, ResidueError
from ..model import Model, build_model, monomial_potential
from .correlator import Correlator, CorrelatorTable
from .recursion import TopologicalRecursion

PhiKey = Tuple[Tuple[int, int], ...]


def _base_model(r: int, n_max: int) -> Model:
    return build_model(r, monomial_potential(r), n_max=n_max, extra_symbols=[EPSILON_SYMBOL])


def epsilon_model(r: int, n_max: int = 3) -> Model:
    model = _base_model(r, n_max)
    eps = model.space.gen(EPSILON_SYMBOL)
    v = list(model.v)
    v[1] = -r * eps ** (r - 1)
    return replace(model, v=tuple(v), meta={"family": "epsilon"})


def rairy_curve(r: int, n_max: int = 3) -> SpectralCurve:
    """x = ζ^r，y = ζ；符号空间与 ε 族相同，便于比较。"""
    return solve_curve(_base_model(r, n_max), 0)


def epsilon_curve(r: int, n_max: int = 3) -> SpectralCurve:
    return solve_curve(epsilon_model(r, n_max), 0)


def epsilon_family(r: int, topologies: Iterable[Tuple[int, int]], n_max: int = 3) -> CorrelatorTable:
    """ε 作为符号，r−1 个简单分支点 ζ^{r−1} = ε^{r−1}。"""
    return TopologicalRecursion(epsilon_curve(r, n_max)).run(topologies)


def limit_eps0(correlator: Correlator) -> Correlator:
    value = substitute(correlator.value, {EPSILON_SYMBOL: 0})
    return Correlator(correlator.g, correlator.n, value, meta={**correlator.meta, "epsilon": "0"})


def _epsilon(field, epsilon, values: Iterable = ()):
    """未显式给出时：数据含 ε 则取符号 ε，否则 ε = 0。"""
    if epsilon is not None:
        return field.one * epsilon
    if EPSILON_SYMBOL in symbol_names(field) and any(depends_on(v, EPSILON_SYMBOL) for v in values):
        return field.gens[symbol_names(field).index(EPSILON_SYMBOL)]
    return field.zero


def phi_basis(field, r: int, l: int, m: int, name: str = zeta_name(1), epsilon=None) -> FracElement:
    """φ_{ℓ,m}(ζ) = ζ^{r−2−ℓ}/(ζ^{r−1} − ε^{r−1})^{m+1}，0 ≤ ℓ ≤ r−2。"""
    if not 0 <= l <= r - 2 or m < 0:
        raise ValueError(f"φ_{{{l},{m}}} 超出范围")
    zeta = field.gens[symbol_names(field).index(name)]
    eps = _epsilon(field, epsilon)
    return zeta ** (r - 2 - l) / (zeta ** (r - 1) - eps ** (r - 1)) ** (m + 1)


def primitive(f: FracElement, name: str) -> FracElement:
    """留数全为零、在 ∞ 处消失的原函数。"""
    pf = partial_fractions(f, name)
    if pf.polynomial:
        raise ResidueError(f"{name} 的多项式部分非零，原函数在 ∞ 处不消失")
    terms = []
    for root, k, coeff in pf.terms:
        if k == 1:
            raise ResidueError(f"{name} 在某个极点处留数非零")
        terms.append((root, k - 1, -coeff / (k - 1)))
    return PartialFractions(var=name, polynomial=f.field.zero, terms=terms).recombine()


def _d_adic(f: FracElement, name: str, r: int, eps) -> List[Tuple[int, int, FracElement]]:
    """f = Σ c_{ℓ,m} φ_{ℓ,m}(name)，系数是其余符号的有理函数。"""
    field = f.field
    zeta = field.gens[symbol_names(field).index(name)]
    power = degree_in(f.denom, name) or 0
    D = zeta ** (r - 1) - eps ** (r - 1)
    P = f * D**power
    if not is_polynomial_in(P, name):
        raise FieldTowerError(f"{name} 的分母不是 ζ^{r - 1} − ε^{r - 1} 的幂", denominator=f.denom)
    current = zeta_coeffs(P, name)
    modulus = zeta_coeffs(D, name)
    out = []
    for j in range(power):
        current, rem = poly_divmod(current, modulus)
        m = power - 1 - j
        for e, c in enumerate(rem):
            if c:
                out.append((r - 2 - e, m, c))
    if any(current):
        raise FieldTowerError(f"{name} 方向在 ∞ 处不消失", denominator=f.denom)
    return out


def to_phi_basis(correlator: Correlator, r: int, epsilon=None) -> Dict[PhiKey, FracElement]:
    """ω_{g,n} = Σ c Π_i dφ_{ℓ_i,m_i}(ζ_i)，键为 ((ℓ_1,m_1), …)。"""
    value = correlator.value
    eps = _epsilon(value.field, epsilon, [value])
    names = correlator.variables()
    for name in names:
        value = primitive(value, name)
    terms: Dict[PhiKey, FracElement] = {(): value}
    for name in names:
        expanded: Dict[PhiKey, FracElement] = {}
        for key, c in terms.items():
            for l, m, coeff in _d_adic(c, name, r, eps):
                k = key + ((l, m),)
                expanded[k] = expanded[k] + coeff if k in expanded else coeff
        terms = expanded
    return {key: canonical(c) for key, c in sorted(terms.items()) if c}


def from_phi_basis(coeffs: Dict[PhiKey, FracElement], field, r: int, epsilon=None) -> FracElement:
    epsilon = _epsilon(field, epsilon, [field.one * c for c in coeffs.values()])
    total = field.zero
    for key, c in coeffs.items():
        term = field.one * c
        for i, (l, m) in enumerate(key, start=1):
            name = zeta_name(i)
            term = term * derivative(phi_basis(field, r, l, m, name, epsilon), name)
        total += term
    return total


def phi_to_dict(coeffs: Dict[PhiKey, FracElement]) -> Dict[str, str]:
    return {"|".join(f"{l},{m}" for l, m in key): rf_to_text(c) for key, c in coeffs.items()}
