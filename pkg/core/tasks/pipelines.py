from typing import Dict, List

from ..algebra import rf_to_text
from ..config import Family, LambdaMode, SeriesKind
from ..curve import branchpoints, curve_invariants_check, solve_curve
from ..errors import ConfigError, FieldTowerError, NonGenericError
from ..job import JobConfig
from ..log import LOG_TAG, logger
from ..maps import FamilySpec, enumerate_maps, minimal_degree
from ..model import monomial_potential
from ..rspin import intersection_numbers
from ..toprec import HigherRecursion, TopologicalRecursion, is_monomial, phi_to_dict, to_phi_basis
from ..tutte import solve_table

TargetResult = Dict


def _result(g: int, n: int, records: List, rows: List, checks: List = ()) -> TargetResult:
    return {"g": g, "n": n, "records": records, "rows": rows, "checks": list(checks)}


class TaskPipelineMixin:
    """单个目标拓扑上的计算；在线程池里调用，只返回可序列化的数据。"""

    def _family_spec(self, config: JobConfig, g: int, n: int, delta: int = 0) -> FamilySpec:
        return FamilySpec(
            config.family,
            config.r,
            g,
            n,
            delta,
            N=config.N if config.lambda_mode == LambdaMode.SYMBOLIC else len(config.lambdas),
            ks=tuple(config.ks) if config.family == Family.MULTI else (),
            lambda_infinity=config.lambda_mode == LambdaMode.INFINITY,
        )

    def run_enumerate(self, config: JobConfig, g: int, n: int) -> TargetResult:
        spec = self._family_spec(config, g, n)
        records, rows = [], []
        for delta in range(minimal_degree(spec), config.order + 1):
            maps = enumerate_maps(spec.at_degree(delta), config.max_maps)
            records.append({"delta": delta, "count": len(maps), "maps": [m.to_record() for m in maps]})
            rows.append([str(g), str(n), str(delta), str(len(maps))])
            logger.info(f"{LOG_TAG} {config.family.value}_{g},{n} δ={delta}：{len(maps)} 个映射")
        return _result(g, n, records, rows)

    def run_tutte(self, config: JobConfig, g: int, n: int) -> TargetResult:
        model = config.build_model()
        table = solve_table(model, config.order, [(g, n)], with_square=config.family == Family.SQUARE)
        records, rows = [], []
        for record in table.to_records():
            if (record["g"], record["n"]) != (g, n):
                continue
            kind = SeriesKind(record["kind"])
            text = rf_to_text(table.coefficient(kind, g, n, record["delta"]))
            records.append({**record, "text": text})
            rows.append([record["kind"], str(g), str(n), str(record["delta"]), text])
        return _result(g, n, records, rows)

    def run_curve(self, config: JobConfig) -> TargetResult:
        curve = solve_curve(config.build_model(), config.order)
        self._check_tower(config, curve)
        report = curve_invariants_check(curve)
        rows = [["Q", str(delta), rf_to_text(c)] for delta, c in sorted(curve.Q.terms().items())]
        data = curve.to_dict()
        data["check"] = report.to_dict()
        checks = [{"g": 0, "n": 1, "delta": None, **item.to_dict()} for item in report.items]
        return _result(0, 0, [data], rows, checks)

    def _check_tower(self, config: JobConfig, curve) -> None:
        if config.tower != "rational":
            return
        for bp in branchpoints(curve):
            if bp.degree > 1:
                raise FieldTowerError(
                    f"分支点所在因子次数为 {bp.degree}，超出声明的有理数域",
                    denominator=bp.ring.modulus_text(),
                )

    def recursion_for(self, curve):
        """一般曲线用简单分支点的递归；r-Airy 曲线改用高阶递归。"""
        try:
            return TopologicalRecursion(curve)
        except NonGenericError:
            if not is_monomial(curve):
                raise
            logger.debug(f"{LOG_TAG} 分支点非简单，改用高阶拓扑递归")
            return HigherRecursion(curve)

    def correlator_table(self, config: JobConfig, g: int, n: int):
        curve = solve_curve(config.build_model(), config.order)
        self._check_tower(config, curve)
        return self.recursion_for(curve).run([(g, n)])

    def run_toprec(self, config: JobConfig, g: int, n: int) -> TargetResult:
        table = self.correlator_table(config, g, n)
        correlator = table.get(g, n)
        record = correlator.to_dict()
        if config.basis == "phi":
            record["phi"] = phi_to_dict(to_phi_basis(correlator, config.r))
        return _result(g, n, [record], [[str(g), str(n), rf_to_text(correlator.value)]])

    def run_intersect(self, config: JobConfig, g: int, n: int) -> TargetResult:
        if config.lambda_mode != LambdaMode.INFINITY or config.coefficients() != [str(c) for c in monomial_potential(config.r)]:
            raise ConfigError("intersect 只在 r-Airy 曲线上定义：需要单项式位势且 λ = ∞")
        table = intersection_numbers(config.r, [(g, n)])[g]
        return _result(g, n, [table.to_dict()], table.rows())
