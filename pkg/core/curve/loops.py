"""谱曲线的自洽校验：线性圈方程、定义方程，以及与 Tutte 级数给出的 W_{0,1}、W_{0,2} 比较。"""
from typing import Callable, List, Tuple

from ..algebra import (
    AlphaSeries,
    QuotientElement,
    derivative,
    divide_series,
    evaluate_univariate,
    rational_ring,
    residue_of_rational,
    series_substitute,
    substitute,
)
from ..config import ALPHA_SYMBOL, ZETA_SYMBOL, SeriesKind, z_name, zeta_name
from ..report import CheckReport
from ..tutte import SeriesTable
from .branch import branchpoints
from .spectral import SpectralCurve, alpha_unit, vanishes_at_infinity, zeta_coeffs, zeta_of_z

W = SeriesKind.W


def _horner(coeffs, w: QuotientElement) -> QuotientElement:
    acc = w.ring.zero
    for c in reversed(coeffs):
        acc = acc * w + c
    return acc


def sheet_sum(curve: SpectralCurve, fn: Callable[[QuotientElement], QuotientElement], name: str = ZETA_SYMBOL):
    """Σ_k fn(ζ^{(k)})：在 K[w]/(Q(w) − Q(ζ)) 中对 fn(w) 取迹，ζ 取符号 name。"""
    coeffs = zeta_coeffs(curve.Q_rational())
    level = curve.Q_rational(name)
    ring = rational_ring(curve.space, [coeffs[0] - level] + coeffs[1:], name="w")
    return ring.trace(fn(ring.gen))


def _pole_weights(curve: SpectralCurve) -> List[Tuple[object, object]]:
    """(ξ_k, m_k α̂ / Q′(ξ_k))，均为截断后的有理函数。"""
    a = curve.model.alpha
    Q_prime = curve.Q_prime_rational()
    weights = []
    for k, (_, count) in enumerate(curve.groups):
        xi = curve.xi_rational(k)
        weights.append((xi, a * count / substitute(Q_prime, {ZETA_SYMBOL: xi})))
    return weights


def y_rational(curve: SpectralCurve):
    zeta = curve.zeta
    total = zeta
    for xi, weight in _pole_weights(curve):
        total += weight / (zeta - xi)
    return total


def disc_cylinder_loop_check(curve: SpectralCurve) -> CheckReport:
    """对全部叶求和：Σ_k y(ζ^{(k)}) = −v_r/v_{r+1} + α̂ Σ_j 1/(Q(ζ)−Q(ξ_j))，
    Σ_k ω_{0,2}(ζ_1^{(k)}, ζ_2) = Q′(ζ_1)Q′(ζ_2)/(Q(ζ_1)−Q(ζ_2))²。"""
    model = curve.model
    report = CheckReport("linear_loop")
    Q = curve.Q_rational()
    weights = _pole_weights(curve)

    def y_of(w):
        total = w
        for xi, weight in weights:
            total = total + (w - xi).inverse() * weight
        return total

    expected = -model.coeff(model.r) / model.coeff(model.r + 1)
    Q_prime = curve.Q_prime_rational()
    for xi, weight in weights:
        expected += weight * substitute(Q_prime, {ZETA_SYMBOL: xi}) / (Q - substitute(Q, {ZETA_SYMBOL: xi}))
    report.expect_equal("Σ_k y(ζ^(k))", sheet_sum(curve, y_of), expected)

    first, second = zeta_name(1), zeta_name(2)
    other = curve.space.gen(second)
    slope = zeta_coeffs(Q_prime)

    def cylinder(w):
        return (_horner(slope, w) * (w - other) ** 2).inverse()

    P1, P2 = curve.Q_prime_rational(first), curve.Q_prime_rational(second)
    Q1, Q2 = curve.Q_rational(first), curve.Q_rational(second)
    report.expect_equal("Σ_k ω02(ζ1^(k), ζ2)", P1 * sheet_sum(curve, cylinder, first), P1 * P2 / (Q1 - Q2) ** 2)
    return report


def curve_invariants_check(curve: SpectralCurve, with_branchpoints: bool = True) -> CheckReport:
    """[Q]_0 = V′、[ξ]_0 = λ、V′(y) − Q = O(1/ζ)、Q(ξ_j) = V′(λ_j)、y dx 在 ξ_j 处的留数。"""
    model = curve.model
    zeta = curve.zeta
    report = CheckReport("curve")
    report.expect_equal("[Q]_0 = V′", curve.Q.coefficient(0), model.dV(zeta))

    potential = [model.coeff(j) for j in range(1, model.r + 2)]
    image = evaluate_univariate(potential, curve.y)
    for d in range(curve.order + 1):
        rest = image.coefficient(d) - curve.Q.coefficient(d)
        report.add(f"α̂^{d} V′(y) − Q = O(1/ζ)", vanishes_at_infinity(rest))

    a = alpha_unit(model)
    Q_full = curve.Q_rational()
    Q_prime = curve.Q.map_coeffs(lambda c: derivative(c, ZETA_SYMBOL))
    differential = curve.y * Q_prime
    for k, (lam, count) in enumerate(curve.groups):
        report.expect_equal(f"[ξ_{k + 1}]_0 = λ", curve.xi[k].coefficient(0), lam)
        at_xi = series_substitute(Q_full, {ZETA_SYMBOL: curve.xi[k], ALPHA_SYMBOL: a}, curve.order + 1)
        for d in range(curve.order + 1):
            target = model.dV(lam) if d == 0 else model.space.zero
            report.expect_equal(f"α̂^{d} Q(ξ_{k + 1}) = V′(λ)", at_xi.coefficient(d), target)
        for d in range(curve.order + 1):
            residue = residue_of_rational(differential.coefficient(d), ZETA_SYMBOL, lam)
            target = model.space.one * count if d == 1 else model.space.zero
            report.expect_equal(f"α̂^{d} Res_ξ{k + 1} y dx", residue, target)

    if with_branchpoints:
        total = sum(bp.degree * bp.multiplicity for bp in branchpoints(curve))
        report.add("分支点重数之和为 r−1", total == model.r - 1, f"合计 {total}")
    return report


def omega01_check(curve: SpectralCurve, table: SeriesTable) -> CheckReport:
    """y(ζ(z)) = z + α̂ (W_{0,1}(z) + Σ_j 1/(V′(z) − V′(λ_j)))，逐阶比较。"""
    model = curve.model
    top = min(curve.order, table.top(W, 0, 1) + 1)
    report = CheckReport("omega01")
    if top < 0:
        return report
    name = z_name(1)
    z = model.space.gen(name)
    value = series_substitute(
        y_rational(curve),
        {ZETA_SYMBOL: zeta_of_z(curve, name, top + 1), ALPHA_SYMBOL: alpha_unit(model)},
        top + 1,
    )
    report.expect_equal("α̂^0", value.coefficient(0), z)
    for d in range(top):
        expected = model.space.convert(table.coefficient(W, 0, 1, d))
        if d == 0:
            for j in range(1, model.N + 1):
                expected += 1 / (model.dV(z) - model.dV(model.lambda_value(j)))
        report.expect_equal(f"α̂^{d + 1}", value.coefficient(d + 1), expected)
    return report


def omega02_check(curve: SpectralCurve, table: SeriesTable) -> CheckReport:
    """W_{0,2} = 1/(Q′(ζ_1)Q′(ζ_2)(ζ_1−ζ_2)²) − 1/(V′(z_1)−V′(z_2))²，ζ_i = ζ(z_i)。"""
    model = curve.model
    report = CheckReport("omega02")

    first, second = curve.space.gens(zeta_name(1), zeta_name(2))
    P1, P2 = curve.Q_prime_rational(zeta_name(1)), curve.Q_prime_rational(zeta_name(2))
    Q1, Q2 = curve.Q_rational(zeta_name(1)), curve.Q_rational(zeta_name(2))
    regular = 1 / (first - second) ** 2 - P1 * P2 / (Q1 - Q2) ** 2
    swapped = substitute(regular, {zeta_name(1): second, zeta_name(2): first})
    report.expect_equal("ζ1↔ζ2 对称", swapped, regular)
    report.add("ζ1→ζ2 无极点", regular.denom.gcd((first - second).numer).is_ground)

    prec = min(curve.order, table.top(W, 0, 2)) + 1
    if prec < 1:
        return report
    a = alpha_unit(model)
    Q_prime = curve.Q_prime_rational()
    z1, z2 = model.z(1), model.z(2)
    zs = [zeta_of_z(curve, z_name(i), prec) for i in (1, 2)]
    slopes = [series_substitute(Q_prime, {ZETA_SYMBOL: s, ALPHA_SYMBOL: a}, prec) for s in zs]
    gap = zs[0] - zs[1]
    one = AlphaSeries([model.space.one], zero=model.space.zero)
    rhs = divide_series(one, slopes[0] * slopes[1] * gap * gap, prec) - 1 / (model.dV(z1) - model.dV(z2)) ** 2
    for d in range(prec):
        lhs = model.space.convert(table.coefficient(W, 0, 2, d))
        report.expect_equal(f"α̂^{d} W02", lhs, rhs.coefficient(d))
    return report
