from ..config import SeriesKind
from ..errors import PrerequisiteError
from ..log import LOG_TAG, logger
from .generic import derivative_term, disc_product, handle_term, lambda_term, require, split_term
from .table import SeriesTable

U, W = SeriesKind.U, SeriesKind.W


def square_step(table: SeriesTable, g: int, n: int, delta: int):
    """(u − z_1) U^δ_{g,n} = 右端；圆盘在 α̂^{-1} 阶多出 1/V″(z_1)。"""
    model = table.model
    u, first = model.u, model.z(1)
    if table.top(W, g, n) < delta:
        raise PrerequisiteError(f"U_{g},{n} 的 α̂^{delta} 阶需要先算 W_{g},{n}")
    low = delta - 1
    rhs = disc_product(table, W, U, g, n, low)
    rhs += lambda_term(table, U, g, n, low)
    rhs += derivative_term(table, U, g, n, low)
    rhs += split_term(table, U, g, n, low)
    rhs += handle_term(table, U, g, n, low)
    if (g, n) == (0, 1) and delta == -1:
        rhs += 1 / model.dV(first, 2)
    value = rhs / (u - first) if rhs else rhs
    table.store(U, g, n, delta, value)
    return value


def series_U(table: SeriesTable, g: int, n: int) -> None:
    """U_{g,n} 直接由方形顶点的 Tutte 方程逐阶求出，每阶排在同阶 W_{g,n} 之后。"""
    table.check_topology(g, n)
    if (g, n) != (0, 1):
        require(table, g, n, (U, W))
    delta = table.top(U, g, n) + 1
    while delta <= table.order:
        square_step(table, g, n, delta)
        delta += 1
    logger.debug(f"{LOG_TAG} U_{g},{n} 已算到 α̂^{table.order}")
