from .executor import JobOutcome
from .manager import TaskManager

__all__ = ["JobOutcome", "TaskManager"]
