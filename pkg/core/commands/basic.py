from ..job import JobConfig
from .status import EXIT_CHECKS, EXIT_OK, error_status


class CommandBasicMixin:
    async def cmd_run(self, config: JobConfig):
        """运行单一路径的计算，返回 (退出码, 提示)"""
        outcome = await self.task_manager.execute_job(config)
        if outcome.error is not None:
            return error_status(outcome.error), f"任务 #{outcome.job_id} 失败：{outcome.error}"
        if outcome.failures:
            return EXIT_CHECKS, f"任务 #{outcome.job_id} 完成，但有 {len(outcome.failures)} 项校验不符：{outcome.path}"
        return EXIT_OK, f"任务 #{outcome.job_id} 完成：{outcome.path}"
