_JOB_SELECT_COLUMNS = """
    id, command, digest, status, error_reason, output_path, created_at, finished_at
"""
_CHECK_SELECT_COLUMNS = """
    id, job_id, g, n, delta, label, ok, detail
"""

JOB_RUNNING = "running"
JOB_OK = "ok"
JOB_FAILED = "failed"

__all__ = [name for name in globals() if not name.startswith("__")]
