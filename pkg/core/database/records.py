from datetime import datetime
from typing import Dict, List, Optional

from .schema import _JOB_SELECT_COLUMNS, JOB_RUNNING


class DatabaseJobMixin:
    """任务记录：开始、结束与查询。"""

    def _sync_start_job(self, command: str, digest: str) -> int:
        conn = self._get_conn()
        cursor = conn.cursor()
        now_str = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        cursor.execute('''
            INSERT INTO job_history (command, digest, status, error_reason, output_path, created_at)
            VALUES (?, ?, ?, '', '', ?)
        ''', (str(command), str(digest), JOB_RUNNING, now_str))
        job_id = cursor.lastrowid
        conn.commit()
        conn.close()
        return job_id

    async def start_job(self, command: str, digest: str) -> int:
        return await self._execute(self._sync_start_job, command, digest)

    def _sync_finish_job(self, job_id: int, status: str, error_reason: str, output_path: str):
        conn = self._get_conn()
        cursor = conn.cursor()
        now_str = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        cursor.execute('''
            UPDATE job_history
            SET status = ?, error_reason = ?, output_path = ?, finished_at = ?
            WHERE id = ?
        ''', (str(status), str(error_reason or ""), str(output_path or ""), now_str, int(job_id)))
        conn.commit()
        conn.close()

    async def finish_job(self, job_id: int, status: str, *, error_reason: str = "", output_path: str = ""):
        await self._execute(self._sync_finish_job, job_id, status, error_reason, output_path)

    def _job_from_row(self, row) -> Dict:
        return {
            "id": row[0],
            "command": row[1],
            "digest": row[2],
            "status": row[3],
            "error_reason": row[4],
            "output_path": row[5],
            "created_at": row[6],
            "finished_at": row[7],
        }

    def _sync_get_job(self, job_id: int) -> Optional[Dict]:
        conn = self._get_conn()
        cursor = conn.cursor()
        cursor.execute(f'SELECT {_JOB_SELECT_COLUMNS} FROM job_history WHERE id = ?', (int(job_id),))
        row = cursor.fetchone()
        conn.close()
        return self._job_from_row(row) if row else None

    async def get_job(self, job_id: int) -> Optional[Dict]:
        return await self._execute(self._sync_get_job, job_id)

    def _sync_recent_jobs(self, limit: int, command: str) -> List[Dict]:
        conn = self._get_conn()
        cursor = conn.cursor()
        if command:
            cursor.execute(
                f'SELECT {_JOB_SELECT_COLUMNS} FROM job_history WHERE command = ? ORDER BY id DESC LIMIT ?',
                (str(command), int(limit)),
            )
        else:
            cursor.execute(f'SELECT {_JOB_SELECT_COLUMNS} FROM job_history ORDER BY id DESC LIMIT ?', (int(limit),))
        rows = cursor.fetchall()
        conn.close()
        return [self._job_from_row(row) for row in rows]

    async def recent_jobs(self, limit: int = 10, command: str = "") -> List[Dict]:
        return await self._execute(self._sync_recent_jobs, limit, command)
