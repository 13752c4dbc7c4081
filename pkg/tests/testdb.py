import importlib.util
import sqlite3
import sys
import tempfile
import types
import unittest
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
MODULE_PATH = ROOT / "core" / "db.py"
PACKAGE_NAME = "kontsevich_db_testpkg"
CORE_PACKAGE_NAME = f"{PACKAGE_NAME}.core"
DB_MODULE_NAME = f"{CORE_PACKAGE_NAME}.db"


def _load_db_module():
    for name in list(sys.modules):
        if name.startswith(PACKAGE_NAME):
            sys.modules.pop(name, None)

    package = types.ModuleType(PACKAGE_NAME)
    package.__path__ = [str(ROOT)]
    sys.modules[PACKAGE_NAME] = package

    core_package = types.ModuleType(CORE_PACKAGE_NAME)
    core_package.__path__ = [str(ROOT / "core")]
    sys.modules[CORE_PACKAGE_NAME] = core_package

    spec = importlib.util.spec_from_file_location(DB_MODULE_NAME, MODULE_PATH)
    module = importlib.util.module_from_spec(spec)
    sys.modules[spec.name] = module
    assert spec and spec.loader
    spec.loader.exec_module(module)
    return module


class RunLedgerTests(unittest.IsolatedAsyncioTestCase):
    async def test_job_lifecycle(self):
        mod = _load_db_module()
        with tempfile.TemporaryDirectory() as tmp:
            db = mod.DatabaseManager(Path(tmp) / "ledger")

            job_id = await db.start_job("tutte", "0123456789abcdef")
            job = await db.get_job(job_id)
            self.assertEqual(job["status"], "running")
            self.assertEqual(job["digest"], "0123456789abcdef")
            self.assertIsNone(job["finished_at"])

            await db.finish_job(job_id, "ok", output_path="/tmp/out.json")
            job = await db.get_job(job_id)
            self.assertEqual(job["status"], "ok")
            self.assertEqual(job["output_path"], "/tmp/out.json")
            self.assertEqual(job["error_reason"], "")
            self.assertIsNotNone(job["finished_at"])
            self.assertTrue((Path(tmp) / "ledger" / "runs.db").exists())

    async def test_recent_jobs_filter_and_order(self):
        mod = _load_db_module()
        with tempfile.TemporaryDirectory() as tmp:
            db = mod.DatabaseManager(Path(tmp))

            first = await db.start_job("tutte", "a")
            second = await db.start_job("toprec", "b")
            third = await db.start_job("tutte", "c")
            await db.finish_job(second, "failed", error_reason="NonGenericError: 分支点重数为 2")

            self.assertEqual([job["id"] for job in await db.recent_jobs()], [third, second, first])
            self.assertEqual([job["id"] for job in await db.recent_jobs(command="tutte")], [third, first])
            self.assertEqual(len(await db.recent_jobs(limit=1)), 1)
            failed = await db.get_job(second)
            self.assertIn("NonGenericError", failed["error_reason"])
            self.assertIsNone(await db.get_job(999))

    async def test_checks_round_trip(self):
        mod = _load_db_module()
        with tempfile.TemporaryDirectory() as tmp:
            db = mod.DatabaseManager(Path(tmp))
            job_id = await db.start_job("crosscheck", "d")

            await db.add_checks(
                job_id,
                [
                    {"g": 0, "n": 2, "delta": 0, "label": "W_0,2 枚举 = Tutte", "ok": True, "detail": ""},
                    {"g": 1, "n": 1, "delta": 1, "label": "W_1,1 枚举 = Tutte", "ok": False, "detail": "差值首项 z1"},
                    {"g": 1, "n": 1, "delta": None, "label": "ω_1,1 拓扑递归", "ok": False, "detail": ""},
                ],
            )
            await db.add_checks(job_id, [])

            checks = await db.get_checks(job_id)
            self.assertEqual([row["ok"] for row in checks], [True, False, False])
            self.assertEqual(checks[0]["label"], "W_0,2 枚举 = Tutte")
            failed = await db.get_checks(job_id, failed_only=True)
            self.assertEqual([row["delta"] for row in failed], [1, None])
            self.assertEqual(failed[0]["detail"], "差值首项 z1")
            self.assertEqual(await db.get_checks(job_id + 1), [])

    async def test_adds_missing_column_to_old_ledger(self):
        mod = _load_db_module()
        with tempfile.TemporaryDirectory() as tmp:
            conn = sqlite3.connect(Path(tmp) / "runs.db")
            conn.execute(
                "CREATE TABLE job_history (id INTEGER PRIMARY KEY AUTOINCREMENT, command TEXT, digest TEXT, "
                "status TEXT, error_reason TEXT, output_path TEXT, created_at TIMESTAMP)"
            )
            conn.commit()
            conn.close()

            db = mod.DatabaseManager(Path(tmp))
            job_id = await db.start_job("curve", "e")
            await db.finish_job(job_id, "ok")
            self.assertIsNotNone((await db.get_job(job_id))["finished_at"])


if __name__ == "__main__":
    unittest.main()
