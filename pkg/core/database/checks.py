from typing import Dict, Iterable, List

from ..log import LOG_TAG, logger
from .schema import _CHECK_SELECT_COLUMNS


class DatabaseCheckMixin:
    """交叉校验的逐项结论。"""

    def _sync_add_checks(self, job_id: int, rows: List[Dict]):
        conn = self._get_conn()
        cursor = conn.cursor()
        cursor.executemany('''
            INSERT INTO check_history (job_id, g, n, delta, label, ok, detail)
            VALUES (?, ?, ?, ?, ?, ?, ?)
        ''', [
            (
                int(job_id),
                int(row["g"]),
                int(row["n"]),
                None if row.get("delta") is None else int(row["delta"]),
                str(row["label"]),
                1 if row["ok"] else 0,
                str(row.get("detail") or ""),
            )
            for row in rows
        ])
        conn.commit()
        conn.close()

    async def add_checks(self, job_id: int, rows: Iterable[Dict]):
        rows = list(rows)
        if not rows:
            return
        await self._execute(self._sync_add_checks, job_id, rows)
        failed = sum(1 for row in rows if not row["ok"])
        if failed:
            logger.debug(f"{LOG_TAG} 任务 {job_id} 记录了 {failed} 项未通过的校验")

    def _check_from_row(self, row) -> Dict:
        return {
            "id": row[0],
            "job_id": row[1],
            "g": row[2],
            "n": row[3],
            "delta": row[4],
            "label": row[5],
            "ok": bool(row[6]),
            "detail": row[7],
        }

    def _sync_get_checks(self, job_id: int, failed_only: bool) -> List[Dict]:
        conn = self._get_conn()
        cursor = conn.cursor()
        query = f'SELECT {_CHECK_SELECT_COLUMNS} FROM check_history WHERE job_id = ?'
        if failed_only:
            query += ' AND ok = 0'
        cursor.execute(query + ' ORDER BY id', (int(job_id),))
        rows = cursor.fetchall()
        conn.close()
        return [self._check_from_row(row) for row in rows]

    async def get_checks(self, job_id: int, failed_only: bool = False) -> List[Dict]:
        return await self._execute(self._sync_get_checks, job_id, failed_only)
