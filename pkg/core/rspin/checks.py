"""相交数表的自洽校验：string 方程与 ε → 0 形变。"""
from typing import Dict, Iterable, List, Mapping, Set, Tuple

from sympy import QQ

from ..log import LOG_TAG, logger
from ..report import CheckReport
from ..toprec import epsilon_family, higher_recursion, limit_eps0, rairy_curve
from .intersections import InsertionKey, IntersectionTable, extract_intersections, insertion_text

STRING = (0, 0)


def _lowered(key: InsertionKey) -> List[InsertionKey]:
    """去掉一个 τ0,0，再把其余某个插入的 d 减一；d = 0 的项不出现。"""
    rest = list(key)
    rest.remove(STRING)
    out = []
    for i, (d, a) in enumerate(rest):
        if d == 0:
            continue
        out.append(tuple(sorted(rest[:i] + [(d - 1, a)] + rest[i + 1 :])))
    return out


def _raised(key: InsertionKey) -> Set[InsertionKey]:
    out = set()
    for i, (d, a) in enumerate(key):
        out.add(tuple(sorted(list(key[:i]) + [(d + 1, a)] + list(key[i + 1 :]) + [STRING])))
    return out


def _string_keys(table: IntersectionTable) -> List[InsertionKey]:
    """两边都在已读出的 n 里、且右边稳定的 τ0,0 插入。"""
    g = table.g
    candidates = set()
    for key in table.entries:
        if STRING in key:
            candidates.add(key)
        candidates |= _raised(key)
    return sorted(
        (
            key
            for key in candidates
            if len(key) in table.filled and len(key) - 1 in table.filled and 2 * g - 3 + len(key) > 0
        ),
        key=lambda k: (len(k), k),
    )


def string_check(tables: Iterable[IntersectionTable]) -> CheckReport:
    """时间为零时的 string 方程：

    ⟨τ0,0 ∏τ_{d_i,j_i}⟩_g = Σ_i ⟨τ_{d_i−1,j_i} ∏_{k≠i} τ_{d_k,j_k}⟩_g，
    g ≥ 1 时 ⟨τ0,0^n⟩_g = 0（n ≥ 2）且 ⟨τ0,0⟩_g = 0，即 ω_{g,1} 没有 dζ/ζ² 项。
    """
    report = CheckReport("string_equation")
    for table in sorted(tables, key=lambda t: t.g):
        g = table.g
        for key in _string_keys(table):
            lhs = table.get(key)
            rhs = sum((table.get(lower) for lower in _lowered(key)), QQ(0))
            lowered = " + ".join(f"⟨{insertion_text(lower)}⟩" for lower in _lowered(key)) or "0"
            report.expect_equal(f"⟨{insertion_text(key)}⟩_{g} = {lowered}", lhs, rhs)
        if g >= 1:
            for n in sorted(table.filled):
                key = (STRING,) * n
                report.expect_zero(f"⟨{insertion_text(key)}⟩_{g} = 0", table.get(key))
    logger.debug(f"{LOG_TAG} string 方程校验 {len(report.items)} 项：{'通过' if report.ok else '失败'}")
    return report


def deformation_check(r: int, topologies: Iterable[Tuple[int, int]]) -> CheckReport:
    """r-Airy 曲线上的高阶递归与 ε 族在 ε = 0 处读出同一张相交数表。"""
    topologies = sorted(set(topologies))
    report = CheckReport(f"deformation_r{r}")
    n_max = max([3] + [n for _, n in topologies])
    direct = higher_recursion(rairy_curve(r, n_max), topologies)
    family = epsilon_family(r, topologies, n_max)
    for g, n in topologies:
        left = extract_intersections(direct.get(g, n), r)
        right = extract_intersections(limit_eps0(family.get(g, n)), r)
        for key in sorted(set(left.entries) | set(right.entries), key=lambda k: (len(k), k)):
            report.expect_equal(f"({g},{n}) ⟨{insertion_text(key)}⟩", left.get(key), right.get(key))
        report.add(f"({g},{n}) 项数", len(left.entries) == len(right.entries), f"{len(left.entries)} / {len(right.entries)}")
    return report


def tables_by_genus(tables: Mapping[int, IntersectionTable]) -> Dict[str, Dict]:
    return {str(g): tables[g].to_dict() for g in sorted(tables)}
