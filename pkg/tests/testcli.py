import csv
import importlib
import json
import sqlite3
import sys
import tempfile
import types
import unittest
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
PACKAGE_NAME = "kontsevich_cli_testpkg"
CORE_PACKAGE_NAME = f"{PACKAGE_NAME}.core"


def _load_core():
    for name in list(sys.modules):
        if name.startswith(PACKAGE_NAME):
            sys.modules.pop(name, None)

    package = types.ModuleType(PACKAGE_NAME)
    package.__path__ = [str(ROOT)]
    sys.modules[PACKAGE_NAME] = package

    core_package = types.ModuleType(CORE_PACKAGE_NAME)
    core_package.__path__ = [str(ROOT / "core")]
    sys.modules[CORE_PACKAGE_NAME] = core_package

    return types.SimpleNamespace(
        main=importlib.import_module(f"{PACKAGE_NAME}.main"),
        commands=importlib.import_module(f"{CORE_PACKAGE_NAME}.commands"),
        tasks=importlib.import_module(f"{CORE_PACKAGE_NAME}.tasks"),
        config=importlib.import_module(f"{CORE_PACKAGE_NAME}.config"),
        model=importlib.import_module(f"{CORE_PACKAGE_NAME}.model"),
        maps=importlib.import_module(f"{CORE_PACKAGE_NAME}.maps"),
        tutte=importlib.import_module(f"{CORE_PACKAGE_NAME}.tutte"),
    )


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.core = _load_core()
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def run_main(self, *argv):
        return self.core.main.main(list(argv) + ["--data-dir", str(self.tmp / "data"), "--log-level", "WARNING"])


class ParserTests(CliTestCase):
    def test_flags(self):
        config = self.core.commands.load_config(["intersect", "--r", "3", "--gn", "1:1,0:3", "--format", "csv"])
        self.assertEqual(config.command, self.core.config.Command.INTERSECT)
        self.assertEqual(config.r, 3)
        self.assertEqual(config.targets, [(1, 1), (0, 3)])
        self.assertEqual(config.format, self.core.config.OutputFormat.CSV)

    def test_flags_override_job_file(self):
        job = self.tmp / "job.conf"
        job.write_text("# 带两个符号 λ\nr = 4\nN = 2\norder = 1\n", encoding="utf-8")

        config = self.core.commands.load_config(["tutte", "--config", str(job)])
        self.assertEqual((config.r, config.N, config.order), (4, 2, 1))

        config = self.core.commands.load_config(["tutte", "--config", str(job), "--lambda-infinity", "--r", "2"])
        self.assertEqual(config.r, 2)
        self.assertEqual(config.N, 0)
        self.assertEqual(config.lambda_mode, self.core.config.LambdaMode.INFINITY)
        self.assertEqual(config.order, 1)

    def test_lambda_flags_are_exclusive(self):
        with self.assertRaises(SystemExit):
            self.core.commands.build_parser().parse_args(["tutte", "--N", "1", "--lambda", "2"])

    def test_invalid_config_exit_status(self):
        self.assertEqual(self.run_main("toprec", "--r", "1"), self.core.commands.EXIT_CONFIG)
        self.assertEqual(self.run_main("toprec", "--config", str(self.tmp / "missing.conf")), self.core.commands.EXIT_CONFIG)


class IntersectRunTests(CliTestCase):
    def test_torus_json(self):
        out = self.tmp / "torus.json"
        status = self.run_main("intersect", "--r", "2", "--gn", "1:1", "--out", str(out))

        self.assertEqual(status, self.core.commands.EXIT_OK)
        data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(data["schema"], self.core.config.SCHEMA_VERSION)
        self.assertEqual(data["command"], "intersect")
        self.assertEqual(data["config"]["r"], "2")
        records = data["results"][0]["records"]
        self.assertEqual(records[0]["entries"], [{"insertions": [[1, 0]], "value": "1/24"}])

    def test_repeated_runs_are_byte_identical(self):
        first, second = self.tmp / "a.json", self.tmp / "b.json"
        argv = ["intersect", "--r", "3", "--gn", "0:3,1:1"]
        self.assertEqual(self.run_main(*argv, "--out", str(first)), 0)
        self.assertEqual(self.run_main(*argv, "--out", str(second)), 0)
        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_csv_rows(self):
        out = self.tmp / "torus.csv"
        status = self.run_main("intersect", "--r", "4", "--gn", "1:1", "--format", "csv", "--out", str(out))

        self.assertEqual(status, 0)
        with open(out, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0], ["schema", self.core.config.SCHEMA_VERSION])
        self.assertEqual(rows[1], ["g", "n", "insertions", "value"])
        self.assertEqual(rows[2:], [["1", "1", "1,0", "1/8"]])

    def test_default_output_path(self):
        status = self.run_main("intersect", "--r", "2", "--gn", "1:1")
        self.assertEqual(status, 0)
        written = sorted((self.tmp / "data").glob("intersect-*.json"))
        self.assertEqual(len(written), 1)

    def test_requires_airy_curve(self):
        status = self.run_main("intersect", "--r", "2", "--N", "1", "--gn", "1:1")
        self.assertEqual(status, self.core.commands.EXIT_CONFIG)


class CrosscheckTests(CliTestCase):
    def test_three_pipelines_agree(self):
        out = self.tmp / "check.json"
        status = self.run_main("crosscheck", "--r", "2", "--gn", "0:2,1:1", "--order", "1", "--out", str(out))

        self.assertEqual(status, self.core.commands.EXIT_OK)
        data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(data["failures"], 0)
        checks = [row for item in data["results"] for row in item["records"]]
        self.assertTrue(checks)
        self.assertTrue(all(row["ok"] for row in checks))
        self.assertIn((1, 1, 1), {(row["g"], row["n"], row["delta"]) for row in checks})

    def test_corrupted_coefficient_is_pinpointed(self):
        model = self.core.model.build_model(
            2, self.core.model.monomial_potential(2), lambda_mode=self.core.config.LambdaMode.INFINITY
        )
        table = self.core.tutte.solve_table(model, 1, [(1, 1)])
        spec = self.core.maps.FamilySpec(self.core.config.Family.CILIATED, 2, 1, 1, 0, lambda_infinity=True)
        expected = self.core.maps.brute_series(spec, model, 1)
        W = self.core.config.SeriesKind.W

        class Corrupted:
            def coefficient(self, kind, g, n, delta):
                return table.coefficient(kind, g, n, delta) + model.z(1)

        manager = self.core.tasks.TaskManager(types.SimpleNamespace(db=None))
        self.assertTrue(all(row["ok"] for row in manager.compare_series(1, 1, W, table, expected, [1])))
        rows = manager.compare_series(1, 1, W, Corrupted(), expected, [1])
        self.assertEqual(len(rows), 1)
        self.assertFalse(rows[0]["ok"])
        self.assertEqual((rows[0]["g"], rows[0]["n"], rows[0]["delta"]), (1, 1, 1))
        self.assertEqual(rows[0]["detail"], "差值首项 z1，分母 1")


class FieldTowerTests(CliTestCase):
    argv = ["--r", "3", "--potential", "0,-2,0,1", "--tower", "rational", "--gn", "1:1", "--order", "0"]

    def last_error_reason(self):
        with sqlite3.connect(self.tmp / "data" / "runs.db") as conn:
            row = conn.execute("SELECT status, error_reason FROM job_history ORDER BY id DESC LIMIT 1").fetchone()
        return row

    def test_curve_rejects_irrational_branchpoint(self):
        status = self.run_main("curve", *self.argv)
        self.assertEqual(status, self.core.commands.EXIT_ERROR)
        _, reason = self.last_error_reason()
        self.assertIn("FieldTowerError", reason)
        self.assertRegex(reason, r"（分母 zeta_root\d+\*\*2 - 2/3）$")

    def test_toprec_rejects_irrational_branchpoint(self):
        self.assertEqual(self.run_main("toprec", *self.argv), self.core.commands.EXIT_ERROR)
        self.assertRegex(self.last_error_reason()[1], r"\*\*2 - 2/3）$")

    def test_crosscheck_records_tower_failure(self):
        out = self.tmp / "check.json"
        status = self.run_main("crosscheck", *self.argv, "--out", str(out))

        self.assertEqual(status, self.core.commands.EXIT_CHECKS)
        data = json.loads(out.read_text(encoding="utf-8"))
        failed = [row for item in data["results"] for row in item["records"] if not row["ok"]]
        self.assertEqual(len(failed), 1)
        self.assertEqual(failed[0]["label"], "ω_1,1 拓扑递归")
        self.assertRegex(failed[0]["detail"], r"^FieldTowerError: .*\*\*2 - 2/3）$")

    def test_auto_tower_accepts_the_same_curve(self):
        argv = [a if a != "rational" else "auto" for a in self.argv]
        self.assertEqual(self.run_main("curve", *argv), self.core.commands.EXIT_OK)


if __name__ == "__main__":
    unittest.main()
