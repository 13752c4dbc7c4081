"""一般拓扑 (g,n) ≠ (0,1) 的分级 Tutte 方程：每一阶先由 u=z_1 得 W^δ，再除出 H^δ。"""
from typing import Iterable, List, Sequence, Tuple

from ..algebra import derivative, substitute
from ..config import U_SYMBOL, SeriesKind, z_name
from ..errors import PrerequisiteError, ZeroDenominatorError
from ..log import LOG_TAG, logger
from .disc import disc_series
from .table import SeriesTable, lowest_order, splits

H, W, U = SeriesKind.H, SeriesKind.W, SeriesKind.U


def grade(topology: Tuple[int, int]) -> Tuple[int, int]:
    g, n = topology
    return 2 * g + n, g


def dependencies(g: int, n: int) -> List[Tuple[int, int]]:
    """(g,n) 方程右端用到的所有低拓扑。"""
    if (g, n) == (0, 1):
        return []
    deps = {(0, 1)}
    if n >= 2:
        deps.add((g, n - 1))
    for h in range(g + 1):
        for chosen, others in splits(range(2, n + 1)):
            if (h == 0 and not chosen) or (g - h == 0 and not others):
                continue
            deps.add((h, 1 + len(chosen)))
            deps.add((g - h, 1 + len(others)))
    if g >= 1:
        deps.add((g - 1, n + 1))
    return sorted(deps, key=grade)


def closure(topologies: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """目标拓扑连同全部前置拓扑，按 2g+n 再按 g 排序。"""
    seen = set()
    stack = list(topologies)
    while stack:
        top = stack.pop()
        if top in seen:
            continue
        seen.add(top)
        stack.extend(dependencies(*top))
    return sorted(seen, key=grade)


def _variables(table: SeriesTable, n: int) -> List:
    return [table.model.z(i) for i in range(1, n + 1)]


def disc_product(table: SeriesTable, left: SeriesKind, right: SeriesKind, g: int, n: int, total_degree: int):
    """Σ_{δ′≥0} left_{0,1}^{δ′}(z_1) · right_{g,n}^{total−δ′}。"""
    acc = table.space.zero
    low = lowest_order(right, g, n)
    for dp in range(0, total_degree - low + 1):
        a = table.coefficient(left, 0, 1, dp)
        if a:
            b = table.coefficient(right, g, n, total_degree - dp)
            if b:
                acc += a * b
    return acc


def lambda_term(table: SeriesTable, kind: SeriesKind, g: int, n: int, delta: int):
    """Σ_j (X(u;z_1,I) − c_j X(u;λ_j,I))/(V′(z_1)−V′(λ_j))；U 取 c_j = V″(λ_j)/V″(z_1)，H 取 1。"""
    model = table.model
    value = table.coefficient(kind, g, n, delta)
    acc = table.space.zero
    if not value or not model.N:
        return acc
    z = _variables(table, n)
    for j in range(1, model.N + 1):
        lam = model.lambda_value(j)
        other = table.at(kind, g, n, delta, [lam] + z[1:])
        if kind == U:
            other = other * model.dV(lam, 2) / model.dV(z[0], 2)
        acc += (value - other) / (model.dV(z[0]) - model.dV(lam))
    return acc


def derivative_term(table: SeriesTable, kind: SeriesKind, g: int, n: int, delta: int):
    """Σ_m 对 z_m 求导的差商项，数据取自 X_{g,n−1}。"""
    model = table.model
    acc = table.space.zero
    if n < 2 or delta < lowest_order(kind, g, n - 1):
        return acc
    z = _variables(table, n)
    first = z[0]
    for m in range(2, n + 1):
        zm = z[m - 1]
        others = [z[i - 1] for i in range(2, n + 1) if i != m]
        a = table.at(kind, g, n - 1, delta, [first] + others)
        b = table.at(kind, g, n - 1, delta, [zm] + others)
        if kind == U:
            a = a * model.dV(first, 2)
            b = b * model.dV(zm, 2)
            scale = 1 / (model.dV(first, 2) * model.dV(zm, 2))
        else:
            scale = 1 / model.dV(zm, 2)
        if a == b:
            continue
        acc += derivative((a - b) / (model.dV(first) - model.dV(zm)), z_name(m)) * scale
    return acc


def split_term(table: SeriesTable, kind: SeriesKind, g: int, n: int, total_degree: int):
    """Σ′ W_{h,1+|J|}(z_1,J) X_{h′,1+|J′|}(u;z_1,J′)；总是去掉 (h=0, J=∅)，H 另去掉 (h′=0, J′=∅)。"""
    acc = table.space.zero
    z = _variables(table, n)
    first = z[0]
    for h in range(g + 1):
        h2 = g - h
        for chosen, others in splits(range(2, n + 1)):
            if h == 0 and not chosen:
                continue
            if kind == H and h2 == 0 and not others:
                continue
            n1, n2 = 1 + len(chosen), 1 + len(others)
            w_args = [first] + [z[i - 1] for i in chosen]
            x_args = [first] + [z[i - 1] for i in others]
            for d1 in range(lowest_order(W, h, n1), total_degree - lowest_order(kind, h2, n2) + 1):
                w = table.at(W, h, n1, d1, w_args)
                if not w:
                    continue
                x = table.at(kind, h2, n2, total_degree - d1, x_args)
                if x:
                    acc += w * x
    return acc


def handle_term(table: SeriesTable, kind: SeriesKind, g: int, n: int, delta: int):
    """X_{g−1,n+1}(u; z_1, z_1, I)。"""
    if g < 1 or delta < lowest_order(kind, g - 1, n + 1):
        return table.space.zero
    z = _variables(table, n)
    return table.at(kind, g - 1, n + 1, delta, [z[0], z[0]] + z[1:])


def require(table: SeriesTable, g: int, n: int, kinds: Sequence[SeriesKind]) -> None:
    """前置拓扑必须至少算到截断阶减一。"""
    for dep in dependencies(g, n):
        table.check_topology(*dep)
        for kind in kinds:
            if table.top(kind, *dep) < table.order - 1:
                raise PrerequisiteError(f"{kind.value}_{dep[0]},{dep[1]} 只算到 α̂^{table.top(kind, *dep)}，需要 α̂^{table.order - 1}")


def generic_step(table: SeriesTable, g: int, n: int, delta: int) -> Tuple[object, object]:
    """α̂^δ 阶：W^δ_{g,n} = −R(z_1)/V″(z_1)，H^δ_{g,n} = (R + H^{-1}_{0,1} W^δ)/(u − z_1)。"""
    model = table.model
    u, first = model.u, model.z(1)
    low = delta - 1
    rhs = disc_product(table, W, H, g, n, low)
    rhs += lambda_term(table, H, g, n, low)
    rhs += disc_product(table, H, W, g, n, low)
    rhs += derivative_term(table, H, g, n, low)
    rhs += split_term(table, H, g, n, low)
    rhs += handle_term(table, H, g, n, low)

    second = model.dV(first, 2)
    if not second:
        raise ZeroDenominatorError("V″(z_1) 恒为零")
    w = -substitute(rhs, {U_SYMBOL: first}) / second if rhs else rhs
    h = (rhs + table.coefficient(H, 0, 1, -1) * w) / (u - first) if rhs else rhs
    table.store(W, g, n, delta, w)
    table.store(H, g, n, delta, h)
    return h, w


def generic_series(table: SeriesTable, g: int, n: int) -> None:
    """把 H_{g,n}、W_{g,n} 填到截断阶。"""
    table.check_topology(g, n)
    if (g, n) == (0, 1):
        disc_series(table)
        return
    require(table, g, n, (H, W))
    delta = table.top(W, g, n) + 1
    while delta <= table.order:
        generic_step(table, g, n, delta)
        delta += 1
    logger.debug(f"{LOG_TAG} W_{g},{n} 已算到 α̂^{table.order}")
