import importlib
import importlib.util
import sys
import types
import unittest
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
PACKAGE_NAME = "kontsevich_algebra_testpkg"
CORE_PACKAGE_NAME = f"{PACKAGE_NAME}.core"
ALGEBRA_MODULE_NAME = f"{CORE_PACKAGE_NAME}.algebra"


def _load_module(name: str, path: Path, package_locations=None):
    spec = importlib.util.spec_from_file_location(name, path, submodule_search_locations=package_locations)
    module = importlib.util.module_from_spec(spec)
    sys.modules[name] = module
    assert spec and spec.loader
    spec.loader.exec_module(module)
    return module


def _load_algebra():
    for name in list(sys.modules):
        if name.startswith(PACKAGE_NAME):
            sys.modules.pop(name, None)

    package = types.ModuleType(PACKAGE_NAME)
    package.__path__ = [str(ROOT)]
    sys.modules[PACKAGE_NAME] = package

    core_package = types.ModuleType(CORE_PACKAGE_NAME)
    core_package.__path__ = [str(ROOT / "core")]
    sys.modules[CORE_PACKAGE_NAME] = core_package

    algebra = _load_module(
        ALGEBRA_MODULE_NAME,
        ROOT / "core" / "algebra" / "__init__.py",
        [str(ROOT / "core" / "algebra")],
    )
    errors = importlib.import_module(f"{CORE_PACKAGE_NAME}.errors")
    return algebra, errors


class RationalFunctionTests(unittest.TestCase):
    def setUp(self):
        self.alg, self.errors = _load_algebra()

    def test_normalize_cancels_common_factor(self):
        space = self.alg.SymbolSpace(["z"])
        z = space.gen("z")

        self.assertEqual(self.alg.rf_normalize(z**2 - 1, z - 1), z + 1)
        self.assertEqual(self.alg.rf_normalize(space.zero, z**3 + 2), space.zero)

    def test_normalize_recovers_kontsevich_propagator(self):
        space = self.alg.SymbolSpace(["a1", "a2"])
        a1, a2 = space.gens("a1", "a2")

        value = self.alg.rf_normalize(a1 - a2, a1**2 - a2**2)

        self.assertEqual(value, 1 / (a1 + a2))
        self.assertEqual(value.denom.LC, 1)

    def test_normalize_rejects_zero_denominator(self):
        space = self.alg.SymbolSpace(["z"])

        with self.assertRaises(self.errors.ZeroDenominatorError):
            self.alg.rf_normalize(space.gen("z"), space.zero)

    def test_substitute_polynomial_and_rational_values(self):
        space = self.alg.SymbolSpace(["x", "y"])
        x, y = space.gens("x", "y")
        f = x * y / (x + y)

        self.assertEqual(self.alg.substitute(f, {"x": 1}), y / (1 + y))
        self.assertEqual(self.alg.substitute(f, {"x": 1 / y}), y / (1 + y**2))
        self.assertEqual(self.alg.substitute(f, {"x": y, "y": x}), f)

    def test_substitute_detects_vanishing_denominator(self):
        space = self.alg.SymbolSpace(["x", "y"])
        x, y = space.gens("x", "y")

        with self.assertRaises(self.errors.ZeroDenominatorError):
            self.alg.substitute(1 / (x - y), {"x": y})

    def test_polynomial_part_in_one_variable(self):
        space = self.alg.SymbolSpace(["u", "z"])
        u, z = space.gens("u", "z")

        part = self.alg.polynomial_part((u**3 + z) / (u - z), "u")

        self.assertEqual(part, u**2 + z * u + z**2)
        self.assertEqual(self.alg.polynomial_part(1 / (u - z), "u"), space.zero)

    def test_convert_between_symbol_spaces(self):
        small = self.alg.SymbolSpace(["z"])
        big = small.extend("w")
        z = small.gen("z")

        moved = big.convert(1 / (z + 1))

        self.assertEqual(moved, 1 / (big.gen("z") + 1))
        with self.assertRaises(KeyError):
            small.convert(big.gen("w"))

    def test_json_scalars_are_reduced_fractions(self):
        space = self.alg.SymbolSpace(["z"])
        z = space.gen("z")

        data = self.alg.rf_to_json((2 * z + 1) / (4 * z))

        self.assertEqual(data["symbols"], ["z"])
        self.assertEqual(data["denominator"], [[[1], "1"]])
        self.assertEqual(data["numerator"], [[[1], "1/2"], [[0], "1/4"]])
        self.assertEqual(self.alg.rf_from_json(data, space), (2 * z + 1) / (4 * z))


class SeriesTests(unittest.TestCase):
    def setUp(self):
        self.alg, self.errors = _load_algebra()

    def test_compose_identity_and_square(self):
        LocalSeries = self.alg.LocalSeries
        outer = self.alg.LaurentSeries([1], start=1)
        inner = LocalSeries([1], start=1, prec=5)

        identity = self.alg.series_compose(outer, inner)
        self.assertEqual(identity.terms(), {1: 1})

        square = self.alg.series_compose(
            self.alg.LaurentSeries([1], start=2),
            LocalSeries([1, 1], start=1, prec=3),
        )
        self.assertEqual(square.prec, 4)
        self.assertEqual(square.terms(), {2: 1, 3: 2})

    def test_compose_polynomial_with_laurent_inner_at_infinity(self):
        space = self.alg.SymbolSpace(["c"])
        c = space.gen("c")
        inner = self.alg.LocalSeries(
            [space.one, space.zero, c], start=-1, zero=space.zero, var="w", point=self.alg.INFINITY
        )

        cube = self.alg.series_compose(self.alg.LaurentSeries([1], start=3), inner)

        self.assertEqual(cube.coefficient(-3), 1)
        self.assertEqual(cube.coefficient(-1), 3 * c)
        self.assertEqual(cube.coefficient(1), 3 * c**2)
        self.assertEqual(cube.coefficient(3), c**3)

    def test_compose_rejects_truncated_outer_with_pole_inner(self):
        inner = self.alg.LocalSeries([1], start=-1, point=self.alg.INFINITY)

        with self.assertRaises(self.errors.TruncationError):
            self.alg.series_compose(self.alg.LaurentSeries([1, 1], prec=3), inner)

    def test_reversion_matches_lagrange_inversion(self):
        f = self.alg.LocalSeries([1, 1], start=1, prec=5)

        g = self.alg.series_reversion(f)

        self.assertEqual(g.terms(), {1: 1, 2: -1, 3: 2, 4: -5})
        self.assertEqual(self.alg.series_compose(f, g).terms(), {1: 1})

    def test_reversion_of_scaling_and_failure_on_flat_series(self):
        g = self.alg.series_reversion(self.alg.LocalSeries([2], start=1))
        self.assertEqual(g.terms(), {1: self.alg.to_scalar("1/2")})

        with self.assertRaises(self.errors.TruncationError):
            self.alg.series_reversion(self.alg.LocalSeries([1], start=2, prec=5))

    def test_inverse_tracks_precision(self):
        inv = self.alg.LaurentSeries([1, 1], prec=4).inverse()

        self.assertEqual(inv.prec, 4)
        self.assertEqual(inv.terms(), {0: 1, 1: -1, 2: 1, 3: -1})
        with self.assertRaises(self.errors.TruncationError):
            inv.coefficient(4)

    def test_alpha_series_from_rational_and_substitution(self):
        space = self.alg.SymbolSpace(["x", "a"])
        x, a = space.gens("x", "a")

        expanded = self.alg.alpha_from_rational(x / (1 - a), 4)
        self.assertEqual([expanded.coefficient(k) for k in range(4)], [x, x, x, x])

        series = self.alg.AlphaSeries([space.one], start=1, prec=4, zero=space.zero)
        geometric = self.alg.series_substitute(1 / (1 - x), {"x": series}, 4)
        self.assertEqual([geometric.coefficient(k) for k in range(4)], [1, 1, 1, 1])

    def test_unit_sqrt(self):
        root = self.alg.LaurentSeries([1, 2, 1], prec=5).unit_sqrt()

        self.assertEqual(root.terms(), {0: 1, 1: 1})


class ResidueTests(unittest.TestCase):
    def setUp(self):
        self.alg, self.errors = _load_algebra()
        self.space = self.alg.SymbolSpace(["z"])
        self.z = self.space.gen("z")

    def test_simple_residues(self):
        z = self.z
        res = self.alg.residue_of_rational

        self.assertEqual(res(1 / z, "z", 0), 1)
        self.assertEqual(res(1 / z**2, "z", 0), 0)
        self.assertEqual(res(z / (z**2 - 1), "z", 1), self.alg.to_scalar("1/2"))
        self.assertEqual(res(1 / z, "z", self.alg.INFINITY), -1)

    def test_residues_sum_to_zero(self):
        z = self.z
        f = (3 * z**3 + z + 5) / ((z - 1) ** 2 * (z + 2) * z**2)
        points = [1, -2, 0, self.alg.INFINITY]

        total = sum(self.alg.residue_of_rational(f, "z", p) for p in points)

        self.assertEqual(total, 0)

    def test_residue_in_quadratic_extension(self):
        z = self.z
        ring = self.alg.root_rings(z**2 - 2, "z")[0]
        f = 1 / (z**2 - 2)

        value = self.alg.residue_of_rational(f, "z", ring.gen, zero=ring.zero)

        # 1/(2√2) = √2/4
        self.assertEqual(value, ring.gen / 4)

    def test_residue_needs_enough_precision(self):
        series = self.alg.LocalSeries([1], start=-3, prec=-2)

        with self.assertRaises(self.errors.ResidueError):
            self.alg.residue_at(series)


class PartialFractionTests(unittest.TestCase):
    def setUp(self):
        self.alg, self.errors = _load_algebra()
        self.space = self.alg.SymbolSpace(["z"])
        self.z = self.space.gen("z")

    def test_cover_up_rule(self):
        z = self.z
        half = self.alg.to_scalar("1/2")

        pf = self.alg.partial_fractions(1 / (z**2 - 1), "z", [1, -1])
        self.assertEqual(sorted((r, k, c) for r, k, c in pf.terms), [(-1, 1, -half), (1, 1, half)])

        pf3 = self.alg.partial_fractions(3 * z / (z**2 - 1), "z", [1, -1])
        self.assertEqual([c for _, _, c in pf3.terms], [3 * half, 3 * half])
        self.assertEqual(pf3.recombine(), 3 * z / (z**2 - 1))

    def test_atomic_double_pole(self):
        z = self.z
        pf = self.alg.partial_fractions(1 / z**2, "z", [0])

        self.assertEqual(pf.terms, [(0, 2, 1)])

    def test_automatic_roots_recombine(self):
        z = self.z
        f = (z**4 + 1) / ((z**2 + 1) * (z - 3) ** 2)

        pf = self.alg.partial_fractions(f, "z")

        self.assertEqual(pf.recombine(), f)

    def test_missing_roots_are_reported(self):
        z = self.z

        with self.assertRaises(self.errors.FieldTowerError):
            self.alg.partial_fractions(1 / (z**2 - 1), "z", [1])


class FieldTests(unittest.TestCase):
    def setUp(self):
        self.alg, self.errors = _load_algebra()

    def test_cyclotomic_sum_powers(self):
        self.assertEqual(self.alg.cyclotomic_sum_powers(3, 0), 3)
        self.assertEqual(self.alg.cyclotomic_sum_powers(3, 1), 0)
        self.assertEqual(self.alg.cyclotomic_sum_powers(4, 6), 0)
        self.assertEqual(self.alg.cyclotomic_sum_powers(5, 10), 5)

    def test_quadratic_inverse_and_trace(self):
        ring = self.alg.sqrt_ring(None, 2)
        s = ring.gen

        inv = (1 + s).inverse()

        self.assertEqual(inv, s - 1)
        self.assertEqual((1 + s) * inv, 1)
        self.assertEqual(ring.trace(s * s), 4)
        self.assertEqual(ring.trace(s), 0)

    def test_field_axioms_on_tower(self):
        tower = self.alg.FieldTower(radicand=2, order=3)
        w, r2 = tower.omega(), tower.sqrt()
        a, b, c = 1 + r2 * w, 2 - w, r2 + 3 * w * w

        self.assertEqual(w**3, 1)
        self.assertEqual(r2 * r2, 2)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a * (1 / a), 1)
        self.assertEqual(tower.scalar_part(w + w * w), -1)

    def test_reducible_modulus_reports_zero_divisor(self):
        ring = self.alg.rational_ring(None, [-1, 0, 1])

        with self.assertRaises(self.errors.FieldTowerError):
            (ring.gen - 1).inverse()


if __name__ == "__main__":
    unittest.main()
