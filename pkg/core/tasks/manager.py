from .crosscheck import TaskCrosscheckMixin
from .delivery import TaskDeliveryMixin
from .executor import TaskExecutorMixin
from .pipelines import TaskPipelineMixin


class TaskManager(
    TaskPipelineMixin,
    TaskCrosscheckMixin,
    TaskExecutorMixin,
    TaskDeliveryMixin,
):
    """Coordinates pipeline runs, artifacts and the run ledger."""

    def __init__(self, app):
        self.app = app
        self.db = app.db
