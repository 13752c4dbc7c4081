from ..config import Command
from ..job import JobConfig
from .basic import CommandBasicMixin
from .check import CommandCheckMixin
from .parser import build_parser, load_config
from .status import EXIT_CHECKS, EXIT_CONFIG, EXIT_ERROR, EXIT_OK, error_status


class CommandHandler(
    CommandBasicMixin,
    CommandCheckMixin,
):
    def __init__(self, app):
        self.app = app
        self.db = app.db
        self.task_manager = app.task_manager

    async def handle(self, config: JobConfig):
        if config.command == Command.CROSSCHECK:
            return await self.cmd_crosscheck(config)
        return await self.cmd_run(config)


__all__ = [
    "CommandHandler",
    "EXIT_CHECKS",
    "EXIT_CONFIG",
    "EXIT_ERROR",
    "EXIT_OK",
    "build_parser",
    "error_status",
    "load_config",
]
