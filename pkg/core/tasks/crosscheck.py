import re
from typing import Dict, List, Optional

from ..config import Family, LambdaMode, SeriesKind
from ..curve import omega01_check, omega02_check, solve_curve
from ..errors import KontsevichError
from ..job import JobConfig
from ..log import LOG_TAG, logger
from ..maps import FamilySpec, brute_series
from ..report import CheckReport
from ..toprec import tutte_check
from ..tutte import lowest_order, solve_table

# (种类, 图族, 是否取辅助权重)
_ORACLES = [
    (SeriesKind.W, Family.CILIATED, False),
    (SeriesKind.U, Family.SQUARE, False),
    (SeriesKind.H, Family.SQUARE, True),
]


def first_term(diff) -> str:
    """差值分子的首项与分母，用于定位出错的单项式。"""
    numer = diff.numer
    lead = numer.ring({numer.LM: numer.LC})
    return f"差值首项 {lead.as_expr()}，分母 {diff.denom.as_expr()}"


def check_row(g: int, n: int, delta: Optional[int], label: str, ok: bool, detail: str = "") -> Dict:
    return {"g": g, "n": n, "delta": delta, "label": label, "ok": bool(ok), "detail": detail}


_DELTA = re.compile(r"^α̂\^(-?\d+)")


def _delta_of(label: str) -> Optional[int]:
    match = _DELTA.match(label)
    return int(match.group(1)) if match else None


def report_rows(g: int, n: int, report: CheckReport, prefix: str = "") -> List[Dict]:
    return [
        check_row(g, n, _delta_of(item.label), f"{prefix}{item.label}", item.ok, item.detail)
        for item in report.items
    ]


class TaskCrosscheckMixin:
    """枚举、Tutte 方程与拓扑递归三条路径逐阶对照。"""

    def compare_series(self, g: int, n: int, kind: SeriesKind, table, expected, orders) -> List[Dict]:
        rows = []
        for delta in orders:
            diff = table.coefficient(kind, g, n, delta) - expected.coefficient(delta)
            label = f"{kind.value}_{g},{n} 枚举 = Tutte"
            if diff:
                rows.append(check_row(g, n, delta, label, False, first_term(diff)))
            else:
                rows.append(check_row(g, n, delta, label, True))
        return rows

    def enumeration_rows(self, config: JobConfig, model, table, g: int, n: int) -> List[Dict]:
        rows = []
        with_square = config.family == Family.SQUARE
        for kind, family, auxiliary in _ORACLES:
            if kind != SeriesKind.W and not with_square:
                continue
            low = lowest_order(kind, g, n)
            top = min(config.order, table.top(kind, g, n))
            if top < low:
                continue
            spec = FamilySpec(family, model.r, g, n, 0, N=model.N, lambda_infinity=config.lambda_mode == LambdaMode.INFINITY)
            expected = brute_series(spec, model, top, auxiliary=auxiliary, delta_min=low, max_maps=config.max_maps)
            rows.extend(self.compare_series(g, n, kind, table, expected, range(low, top + 1)))
        return rows

    def recursion_rows(self, config: JobConfig, model, table, g: int, n: int) -> List[Dict]:
        """ω_{g,n} 在 ζ(z) 处展开后与 W_{g,n} 比较；递归本身失败时记为一条失败项。"""
        try:
            curve = solve_curve(model, config.order)
            self._check_tower(config, curve)
            if (g, n) == (0, 1):
                return report_rows(g, n, omega01_check(curve, table), "ω_0,1 ")
            if (g, n) == (0, 2):
                return report_rows(g, n, omega02_check(curve, table), "ω_0,2 ")
            correlators = self.recursion_for(curve).run([(g, n)])
            report = tutte_check(curve, correlators.get(g, n), table)
        except KontsevichError as e:
            logger.warning(f"{LOG_TAG} ω_{g},{n} 无法参与对照：{e}")
            return [check_row(g, n, None, f"ω_{g},{n} 拓扑递归", False, self._error_reason(e))]
        return report_rows(g, n, report, f"ω_{g},{n} 展开 = W ")

    def run_crosscheck(self, config: JobConfig, g: int, n: int) -> Dict:
        model = config.build_model()
        table = solve_table(model, config.order, [(g, n)], with_square=config.family == Family.SQUARE)
        checks = self.enumeration_rows(config, model, table, g, n)
        checks += self.recursion_rows(config, model, table, g, n)
        failed = sum(1 for row in checks if not row["ok"])
        logger.info(f"{LOG_TAG} ({g},{n}) 对照完成：{len(checks)} 项，{failed} 项不符")
        rows = [
            [str(g), str(n), "" if row["delta"] is None else str(row["delta"]), row["label"], "ok" if row["ok"] else "FAIL", row["detail"]]
            for row in checks
        ]
        return {"g": g, "n": n, "records": checks, "rows": rows, "checks": checks}
