import importlib
import sys
import types
import unittest
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
PACKAGE_NAME = "kontsevich_config_testpkg"
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
        args=importlib.import_module(f"{CORE_PACKAGE_NAME}.args"),
        job=importlib.import_module(f"{CORE_PACKAGE_NAME}.job"),
        config=importlib.import_module(f"{CORE_PACKAGE_NAME}.config"),
        errors=importlib.import_module(f"{CORE_PACKAGE_NAME}.errors"),
    )


class JobTextTests(unittest.TestCase):
    def setUp(self):
        self.core = _load_core()

    def test_parse_job_text(self):
        text = "# r=3 的环面\n\ncommand = intersect\nr = 3\n gn = 1:1 , 0:3 \nr = 4\n"
        values = self.core.args.parse_job_text(text)
        self.assertEqual(values, {"command": "intersect", "r": "4", "gn": "1:1 , 0:3"})

    def test_malformed_line(self):
        with self.assertRaises(self.core.errors.ConfigError):
            self.core.args.parse_job_text("r = 3\norder 2\n")
        with self.assertRaises(self.core.errors.ConfigError):
            self.core.args.parse_job_text(" = 3\n")

    def test_rationals(self):
        parse = self.core.args.parse_rationals
        self.assertEqual(parse("1/2, 2/4,-3, 0"), ["1/2", "1/2", "-3", "0"])
        self.assertEqual(parse(""), [])
        for bad in ("x", "1/0"):
            with self.assertRaises(self.core.errors.ConfigError):
                parse(bad)

    def test_topologies(self):
        parse = self.core.args.parse_topologies
        self.assertEqual(parse("1:1, 0:3,1:1"), [(1, 1), (0, 3)])
        self.assertEqual(self.core.args.format_topologies([(1, 1), (0, 3)]), "1:1,0:3")
        for bad in ("1", "0:0", "-1:2", "a:1"):
            with self.assertRaises(self.core.errors.ConfigError):
                parse(bad)

    def test_booleans(self):
        parse = self.core.args.parse_bool
        self.assertTrue(parse("k", "Yes"))
        self.assertFalse(parse("k", ""))
        with self.assertRaises(self.core.errors.ConfigError):
            parse("k", "maybe")
        self.assertTrue(self.core.args.is_infinity(" Infinity "))
        self.assertTrue(self.core.args.is_infinity("∞"))


class JobConfigTests(unittest.TestCase):
    def setUp(self):
        self.core = _load_core()
        self.JobConfig = self.core.job.JobConfig
        self.Mode = self.core.config.LambdaMode

    def make(self, **values):
        return self.JobConfig.from_mapping({k: str(v) for k, v in values.items()})

    def test_defaults(self):
        config = self.make(command="intersect", r=3)
        self.assertEqual(config.command, self.core.config.Command.INTERSECT)
        self.assertEqual(config.targets, [(1, 1)])
        self.assertEqual(config.order, 2)
        self.assertEqual(config.lambda_mode, self.Mode.INFINITY)
        self.assertEqual(config.coefficients(), ["0", "0", "0", "1"])
        self.assertEqual(config.format, self.core.config.OutputFormat.JSON)

    def test_lambda_modes(self):
        self.assertEqual(self.make(command="tutte", N=2).lambda_mode, self.Mode.SYMBOLIC)
        config = self.make(command="tutte", **{"lambda": "1/2,3"})
        self.assertEqual(config.lambda_mode, self.Mode.VALUES)
        self.assertEqual(config.lambdas, ["1/2", "3"])
        self.assertEqual(self.make(command="tutte", **{"lambda": "infinity"}).lambda_mode, self.Mode.INFINITY)
        self.assertEqual(self.make(command="tutte", lambda_infinity="true").lambda_mode, self.Mode.INFINITY)

    def test_lambda_specs_are_exclusive(self):
        ConfigError = self.core.errors.ConfigError
        with self.assertRaises(ConfigError):
            self.make(command="tutte", N=1, **{"lambda": "2"})
        with self.assertRaises(ConfigError):
            self.make(command="tutte", N=1, lambda_infinity="true")
        with self.assertRaises(ConfigError):
            self.make(command="tutte", lambda_infinity="true", **{"lambda": "2"})

    def test_validation(self):
        ConfigError = self.core.errors.ConfigError
        bad = [
            {"r": 1},
            {"order": -1},
            {"potential": "1,2"},
            {"potential": "1,0,0"},
            {"gn": ""},
            {"max_maps": 0},
            {"format": "xml"},
            {"basis": "psi"},
            {"family": "X"},
            {"bogus": "1"},
            {"command": "plot"},
        ]
        for values in bad:
            with self.subTest(values=values):
                with self.assertRaises(ConfigError):
                    self.make(**{"command": "tutte", **values})

    def test_multi_ciliated_degrees(self):
        with self.assertRaises(self.core.errors.ConfigError):
            self.make(command="enumerate", family="S", gn="0:2", ks="2")
        config = self.make(command="enumerate", family="S", gn="0:2", ks="2,1")
        self.assertEqual(config.ks, [2, 1])

    def test_text_round_trip(self):
        configs = [
            self.make(command="toprec", r=3, potential="0,-3/2,0,1/4", gn="1:1,0:3", basis="phi"),
            self.make(command="tutte", r=2, N=2, order=3, family="U"),
            self.make(command="enumerate", r=3, gn="0:3", order=1, **{"lambda": "1,-1/2"}, format="csv"),
        ]
        for config in configs:
            text = config.to_text()
            again = self.JobConfig.from_mapping(self.core.args.parse_job_text(text))
            self.assertEqual(again, config)
            self.assertEqual(again.to_text(), text)

    def test_digest_ignores_output_settings(self):
        base = self.make(command="curve", r=2, N=1)
        moved = self.make(command="curve", r=2, N=1, out="/tmp/x.json", log_level="DEBUG", data_dir="/tmp/d")
        self.assertEqual(base.digest(), moved.digest())
        self.assertEqual(len(base.digest()), 16)
        self.assertNotEqual(base.digest(), self.make(command="curve", r=3, N=1).digest())
        self.assertNotIn("out", base.to_dict())

    def test_build_model(self):
        model = self.make(command="tutte", r=2, N=2, gn="0:4").build_model()
        self.assertEqual(model.N, 2)
        self.assertEqual(model.n_max, 4)
        model = self.make(command="tutte", r=3, **{"lambda": "1,2,3"}).build_model()
        self.assertEqual(model.lambda_mode, self.Mode.VALUES)
        self.assertEqual(model.N, 3)


if __name__ == "__main__":
    unittest.main()
