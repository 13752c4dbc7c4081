from collections import Counter

from ..job import JobConfig
from .status import EXIT_CHECKS, EXIT_OK, error_status


class CommandCheckMixin:
    async def cmd_crosscheck(self, config: JobConfig):
        """枚举、Tutte 方程与拓扑递归逐阶对照"""
        outcome = await self.task_manager.execute_job(config)
        if outcome.error is not None:
            return error_status(outcome.error), f"对照任务 #{outcome.job_id} 失败：{outcome.error}"

        checks = await self.db.get_checks(outcome.job_id)
        if not outcome.failures:
            return EXIT_OK, f"对照通过：{len(checks)} 项全部相等\n报告：{outcome.path}"

        per_target = Counter((row["g"], row["n"]) for row in outcome.failures)
        lines = [f"对照不符：{len(outcome.failures)} / {len(checks)} 项"]
        for (g, n), count in sorted(per_target.items()):
            lines.append(f"• ({g},{n})：{count} 项")
        first = outcome.failures[0]
        delta = "" if first["delta"] is None else f" α̂^{first['delta']}"
        lines.append(f"首个不符：({first['g']},{first['n']}){delta} {first['label']}  {first['detail']}")
        lines.append(f"报告：{outcome.path}")
        return EXIT_CHECKS, "\n".join(lines)
