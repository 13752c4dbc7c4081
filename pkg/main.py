import asyncio
import sys
from typing import List, Optional

from .core.commands import CommandHandler, error_status, load_config
from .core.db import DatabaseManager
from .core.errors import KontsevichError
from .core.job import JobConfig
from .core.log import LOG_TAG, logger, setup_logging
from .core.tasks import TaskManager


class KontsevichApp:
    def __init__(self, config: JobConfig):
        self.config = config

        # 运行记录
        self.db = DatabaseManager(config.data_dir)

        # 核心逻辑解耦器
        self.task_manager = TaskManager(self)
        self.command_handler = CommandHandler(self)

    async def run(self):
        return await self.command_handler.handle(self.config)


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    try:
        config = load_config(argv)
    except KontsevichError as e:
        logger.error(f"{LOG_TAG} 配置无效: {e}")
        return error_status(e)
    setup_logging(config.log_level)

    status, message = asyncio.run(KontsevichApp(config).run())
    print(message, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
