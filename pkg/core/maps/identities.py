from math import factorial
from typing import List

from ..algebra import derivative
from ..model import Model
from ..report import CheckReport
from .weights import propagator, vertex_weight

TADPOLE_SYMBOL = "w"


def _free_symbols(count: int) -> List[str]:
    return [f"x{i}" for i in range(1, count + 1)]


def _with_free_symbols(model: Model, count: int, *extra: str) -> Model:
    names = [n for n in _free_symbols(count) + list(extra) if n not in model.space]
    if not names:
        return model
    return model.with_space(model.space.extend(*names))


def cut_vertex_check(model: Model) -> CheckReport:
    """顶点权的差商关系与传播子的切割关系。"""
    r = model.r
    local = _with_free_symbols(model, r + 2)
    x = [local.gen(n) for n in _free_symbols(r + 2)]
    report = CheckReport("cut_vertex")
    for m in range(1, r + 1):
        left = (vertex_weight([x[0]] + x[2 : m + 1], local) - vertex_weight([x[1]] + x[2 : m + 1], local)) / (x[0] - x[1])
        right = vertex_weight(x[: m + 1], local)
        report.expect_equal(f"V_{m} 差商", left, right)
    p_ik = propagator(x[0], x[2], local)
    p_jk = propagator(x[1], x[2], local)
    report.expect_equal(
        "P 差商",
        (p_ik - p_jk) / (x[0] - x[1]),
        p_ik * vertex_weight(x[:3], local) * p_jk,
    )
    return report


def derivative_checks(model: Model) -> CheckReport:
    """∂𝒱_m、∂𝒫 以及高阶导数与重复变量的关系。"""
    r = model.r
    local = _with_free_symbols(model, r + 2)
    names = _free_symbols(r + 2)
    x = [local.gen(n) for n in names]
    report = CheckReport("derivatives")
    for m in range(1, r + 1):
        left = derivative(vertex_weight(x[:m], local), names[0])
        report.expect_equal(f"∂V_{m}", left, vertex_weight([x[0]] + x[:m], local))
    p = propagator(x[0], x[1], local)
    report.expect_equal("∂P", derivative(p, names[0]), p * vertex_weight([x[0], x[0], x[1]], local) * p)
    for ell in range(1, r + 1):
        base = vertex_weight(x[:ell], local)
        for m in range(1, r + 2 - ell):
            current = base
            for _ in range(m):
                current = derivative(current, names[0])
            left = vertex_weight([x[0]] * (m + 1) + x[1:ell], local)
            report.expect_equal(f"V_{m + ell} 重复 {m + 1} 次", left, current / factorial(m))
    return report


def tadpole_check(model: Model, k: int) -> CheckReport:
    """w 代表 W_{0,1}(z)：Σ_{m≥1} 𝒱_{k+m}(a, z^m) w^{m−1} = 𝒱_{k+1}(a, z+w)。

    k=0 时另查去掉 m=1 项后的和等于 V′(z) − V′(z+w)。
    """
    local = _with_free_symbols(model, k + 1, TADPOLE_SYMBOL)
    a = [local.gen(n) for n in _free_symbols(k + 1)]
    args, z = a[:k], a[k]
    w = local.gen(TADPOLE_SYMBOL)
    report = CheckReport(f"tadpole_{k}")
    total = local.space.zero
    tail = local.space.zero
    for m in range(1, local.r + 2 - k):
        term = vertex_weight(args + [z] * m, local) * w ** (m - 1)
        total += term
        if m >= 2:
            tail += term
    report.expect_equal("resummed", total, vertex_weight(args + [z + w], local))
    if k == 0:
        report.expect_equal("m≥2", tail, local.dV(z) - local.dV(z + w))
    return report
