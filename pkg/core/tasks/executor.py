import asyncio
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from ..config import THREADS_ENV, Command
from ..database.schema import JOB_FAILED, JOB_OK
from ..errors import ConfigError, FieldTowerError, KontsevichError
from ..job import JobConfig
from ..log import LOG_TAG, logger


def worker_count(targets: int) -> int:
    """KONTSEVICH_THREADS 未设置时取 CPU 数。"""
    raw = os.environ.get(THREADS_ENV, "").strip()
    try:
        count = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        logger.warning(f"{LOG_TAG} {THREADS_ENV}={raw!r} 不是整数，改用单线程")
        count = 1
    return max(1, min(count, max(targets, 1)))


@dataclass
class JobOutcome:
    job_id: int
    status: str
    path: Optional[Path] = None
    failures: List[Dict] = field(default_factory=list)
    error: Optional[KontsevichError] = None

    @property
    def ok(self) -> bool:
        return self.status == JOB_OK and not self.failures


class TaskExecutorMixin:
    """任务主流程：分发目标、写结果文件、登记运行记录。"""

    def _runner(self, command: Command) -> Callable[[JobConfig, int, int], Dict]:
        return {
            Command.ENUMERATE: self.run_enumerate,
            Command.TUTTE: self.run_tutte,
            Command.TOPREC: self.run_toprec,
            Command.INTERSECT: self.run_intersect,
            Command.CROSSCHECK: self.run_crosscheck,
        }[command]

    async def compute(self, config: JobConfig) -> List[Dict]:
        """各目标 (g,n) 并发计算，结果按目标给出的顺序排列。"""
        loop = asyncio.get_running_loop()
        if config.command == Command.CURVE:
            return [await loop.run_in_executor(None, self.run_curve, config)]

        runner = self._runner(config.command)
        with ThreadPoolExecutor(max_workers=worker_count(len(config.targets))) as pool:
            futures = [loop.run_in_executor(pool, runner, config, g, n) for g, n in config.targets]
            return list(await asyncio.gather(*futures))

    def _error_reason(self, e: KontsevichError) -> str:
        reason = f"{type(e).__name__}: {e}"
        if isinstance(e, FieldTowerError) and e.denominator is not None:
            reason += f"（分母 {e.denominator}）"
        return reason

    async def execute_job(self, config: JobConfig) -> JobOutcome:
        job_id = await self.db.start_job(config.command.value, config.digest())
        logger.info(f"{LOG_TAG} 任务 #{job_id} 开始：{config.command.value}，r={config.r}，目标 {len(config.targets)} 个")
        try:
            results = await self.compute(config)
            checks = [row for item in results for row in item.get("checks", [])]
            failures = [row for row in checks if not row["ok"]]
            path = await self.write_artifact(config, results, len(failures))
        except ConfigError as e:
            logger.error(f"{LOG_TAG} 任务 #{job_id} 配置无效: {e}")
            await self.db.finish_job(job_id, JOB_FAILED, error_reason=self._error_reason(e))
            return JobOutcome(job_id, JOB_FAILED, error=e)
        except KontsevichError as e:
            reason = self._error_reason(e)
            logger.error(f"{LOG_TAG} 任务 #{job_id} 失败: {reason}")
            await self.db.finish_job(job_id, JOB_FAILED, error_reason=reason)
            return JobOutcome(job_id, JOB_FAILED, error=e)
        except Exception as e:
            reason = f"{type(e).__name__}: {e}"
            logger.exception(f"{LOG_TAG} 任务 #{job_id} 异常: {reason}")
            await self.db.finish_job(job_id, JOB_FAILED, error_reason=reason)
            return JobOutcome(job_id, JOB_FAILED, error=KontsevichError(reason))

        if checks:
            await self.db.add_checks(job_id, checks)
        if failures:
            logger.warning(f"{LOG_TAG} 任务 #{job_id} 有 {len(failures)} 项校验不符")
        await self.db.finish_job(job_id, JOB_OK, output_path=str(path))
        logger.info(f"{LOG_TAG} 任务 #{job_id} 完成")
        return JobOutcome(job_id, JOB_OK, path=path, failures=failures)
