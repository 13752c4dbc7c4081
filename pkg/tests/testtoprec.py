import importlib
import sys
import types
import unittest
from pathlib import Path


ROOT = Path(__file__).resolve().parents[1]
PACKAGE_NAME = "kontsevich_toprec_testpkg"
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
        toprec=importlib.import_module(f"{CORE_PACKAGE_NAME}.toprec"),
        curve=importlib.import_module(f"{CORE_PACKAGE_NAME}.curve"),
        tutte=importlib.import_module(f"{CORE_PACKAGE_NAME}.tutte"),
        model=importlib.import_module(f"{CORE_PACKAGE_NAME}.model"),
        config=importlib.import_module(f"{CORE_PACKAGE_NAME}.config"),
        errors=importlib.import_module(f"{CORE_PACKAGE_NAME}.errors"),
    )


QUARTIC = [0, -3, 0, 1]


class ToprecTestCase(unittest.TestCase):
    def setUp(self):
        self.core = _load_core()

    def build(self, r, potential, **kwargs):
        return self.core.model.build_model(r, potential, **kwargs)

    def monomial(self, r, **kwargs):
        return self.build(r, self.core.model.monomial_potential(r), **kwargs)

    def solve(self, model, order=0):
        return self.core.curve.solve_curve(model, order)

    def zetas(self, curve, n=3):
        name = self.core.config.zeta_name
        return [curve.space.gen(name(i)) for i in range(1, n + 1)]

    def assertSame(self, left, right):
        self.assertFalse(left - right, f"{left} != {right}")

    def assertReportOk(self, report):
        self.assertTrue(report.ok, [item.to_dict() for item in report.failures()])


class RecursionTests(ToprecTestCase):
    def test_quartic_pair_of_pants(self):
        curve = self.solve(self.build(3, QUARTIC))
        table = self.core.toprec.topological_recursion(curve, [(0, 3)])
        z1, z2, z3 = self.zetas(curve)
        a = curve.model.alpha
        expected = a / 6 * (1 / ((z1 + 1) * (z2 + 1) * (z3 + 1)) ** 2 - 1 / ((z1 - 1) * (z2 - 1) * (z3 - 1)) ** 2)
        self.assertSame(table.values(0, 3), expected)

    def test_quartic_torus(self):
        curve = self.solve(self.build(3, QUARTIC))
        table = self.core.toprec.topological_recursion(curve, [(1, 1)])
        z1 = self.zetas(curve, 1)[0]
        a = curve.model.alpha
        expected = -a * z1 * (z1**2 + 2) / (9 * (z1 + 1) ** 4 * (z1 - 1) ** 4)
        self.assertSame(table.values(1, 1), expected)

    def test_airy(self):
        curve = self.solve(self.monomial(2))
        table = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        z1, z2, z3 = self.zetas(curve)
        a = curve.model.alpha
        self.assertSame(table.values(1, 1), -a / (16 * z1**4))
        self.assertSame(table.values(0, 3), -a / (2 * (z1 * z2 * z3) ** 2))

    def test_step_records_branchpoints(self):
        curve = self.solve(self.build(3, QUARTIC))
        table = self.core.toprec.CorrelatorTable(curve)
        correlator = self.core.toprec.tr_step(curve, 0, 3, table)
        self.assertEqual(correlator.meta["branchpoints"], 2)
        self.assertEqual(correlator.euler, 1)
        self.assertTrue(table.has(0, 3))
        self.assertEqual(table.keys(), [(0, 2), (0, 3)])

    def test_unstable_topology_is_rejected(self):
        curve = self.solve(self.monomial(2))
        recursion = self.core.toprec.TopologicalRecursion(curve)
        with self.assertRaises(self.core.errors.ConfigError):
            recursion.step(0, 2)

    def test_missing_correlator(self):
        curve = self.solve(self.monomial(2))
        table = self.core.toprec.CorrelatorTable(curve)
        with self.assertRaises(self.core.errors.PrerequisiteError):
            table.get(1, 1)
        with self.assertRaises(self.core.errors.ConfigError):
            table.get(0, 1)

    def test_ramified_point_needs_higher_recursion(self):
        curve = self.solve(self.monomial(3))
        with self.assertRaises(self.core.errors.NonGenericError):
            self.core.toprec.TopologicalRecursion(curve)

    def test_records_are_ordered(self):
        curve = self.solve(self.monomial(2))
        table = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        records = table.to_records()
        self.assertEqual([(r["g"], r["n"]) for r in records], [(0, 2), (0, 3), (1, 1)])
        self.assertIn("denominator", records[1])


class HigherRecursionTests(ToprecTestCase):
    def test_r2_agrees_with_simple_recursion(self):
        curve = self.solve(self.monomial(2))
        simple = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        higher = self.core.toprec.higher_recursion(curve, [(1, 1), (0, 3)])
        for g, n in [(1, 1), (0, 3)]:
            self.assertSame(higher.values(g, n), simple.values(g, n))

    def test_torus_on_rairy_curve(self):
        for r in (3, 4):
            curve = self.core.toprec.rairy_curve(r)
            table = self.core.toprec.higher_recursion(curve, [(1, 1)])
            z1 = self.zetas(curve, 1)[0]
            a = curve.model.alpha
            self.assertSame(table.values(1, 1), -a * (r * r - 1) / (24 * r) / z1 ** (r + 2))

    def test_pair_of_pants_on_rairy_curve(self):
        curve = self.core.toprec.rairy_curve(3)
        table = self.core.toprec.higher_recursion(curve, [(0, 3)])
        z1, z2, z3 = self.zetas(curve)
        a = curve.model.alpha
        expected = -2 * a / 3 * (z1 * z2 + z1 * z3 + z2 * z3) / (z1 * z2 * z3) ** 3
        self.assertSame(table.values(0, 3), expected)
        self.assertEqual(table.get(0, 3).meta["recursion"], "higher")

    def test_rejects_general_potential(self):
        curve = self.solve(self.build(3, QUARTIC))
        with self.assertRaises(self.core.errors.NonGenericError):
            self.core.toprec.HigherRecursion(curve)


class EpsilonFamilyTests(ToprecTestCase):
    def test_torus_in_phi_basis(self):
        table = self.core.toprec.epsilon_family(3, [(1, 1)])
        curve = table.curve
        a = curve.model.alpha
        eps = curve.space.gen(self.core.config.EPSILON_SYMBOL)
        coeffs = self.core.toprec.to_phi_basis(table.get(1, 1), 3)
        self.assertEqual(sorted(coeffs), [((1, 1),), ((1, 2),)])
        self.assertSame(coeffs[((1, 1),)], a / 36)
        self.assertSame(coeffs[((1, 2),)], a * eps**2 / 18)
        rebuilt = self.core.toprec.from_phi_basis(coeffs, curve.space.field, 3)
        self.assertSame(rebuilt, table.values(1, 1))

    def test_limit_matches_higher_recursion(self):
        family = self.core.toprec.epsilon_family(3, [(1, 1)])
        limit = self.core.toprec.limit_eps0(family.get(1, 1))
        higher = self.core.toprec.higher_recursion(self.core.toprec.rairy_curve(3), [(1, 1)])
        self.assertSame(limit.value, higher.values(1, 1))
        self.assertEqual(limit.meta["epsilon"], "0")

    def test_rairy_pair_of_pants_in_phi_basis(self):
        curve = self.core.toprec.rairy_curve(3)
        table = self.core.toprec.higher_recursion(curve, [(0, 3)])
        coeffs = self.core.toprec.to_phi_basis(table.get(0, 3), 3)
        a = curve.model.alpha
        keys = [((1, 0), (0, 0), (0, 0)), ((0, 0), (1, 0), (0, 0)), ((0, 0), (0, 0), (1, 0))]
        self.assertEqual(sorted(coeffs), sorted(keys))
        for key in keys:
            self.assertSame(coeffs[key], a / 3)

    def test_phi_index_range(self):
        curve = self.core.toprec.rairy_curve(3)
        with self.assertRaises(ValueError):
            self.core.toprec.phi_basis(curve.space.field, 3, 2, 0)

    def test_primitive_rejects_residue(self):
        curve = self.core.toprec.rairy_curve(3)
        z1 = self.zetas(curve, 1)[0]
        with self.assertRaises(self.core.errors.ResidueError):
            self.core.toprec.primitive(1 / z1, self.core.config.zeta_name(1))


class OperatorTests(ToprecTestCase):
    def setUp(self):
        super().setUp()
        self.curve = self.solve(self.monomial(2))
        self.table = self.core.toprec.CorrelatorTable(self.curve)
        self.one = self.curve.space.one

    def test_compositions(self):
        self.assertEqual(list(self.core.toprec.compositions(2, 2)), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(list(self.core.toprec.compositions(1, 0)), [])

    def test_partition_terms(self):
        terms = list(self.core.toprec.partition_terms(2, 1, 0))
        self.assertEqual(len(terms), 3)
        primed = list(self.core.toprec.partition_terms(2, 1, 0, with_disc=False))
        self.assertEqual(primed, [[(0, (0, 1), ())]])

    def test_empty_operator(self):
        E = self.core.toprec.E_operator
        self.assertSame(E(self.table, 0, 0, [], [], self.one), self.one)
        self.assertFalse(E(self.table, 0, 1, [], [], self.one))

    def test_single_point_is_wtilde(self):
        z1, z2, _ = self.zetas(self.curve)
        value = self.core.toprec.E_operator(self.table, 1, 0, [z1], [z2], self.one)
        self.assertSame(value, self.table.wtilde(0, 2))

    def test_two_discs(self):
        z1, z2, _ = self.zetas(self.curve)
        a = self.curve.model.alpha
        E = self.core.toprec.E_operator(self.table, 2, 0, [z1, z2], [], self.one)
        self.assertSame(E, z1 * z2 / a**2)
        R = self.core.toprec.R_operator(self.table, 2, 0, [z1, z2], [], self.one)
        self.assertFalse(R)

    def test_two_points_with_cylinder(self):
        z1, z2, z3 = self.zetas(self.curve)
        wtilde = self.table.wtilde
        value = self.core.toprec.E_operator(self.table, 2, 0, [z1, z2], [z3], self.one)
        w01 = lambda z: z / self.curve.model.alpha
        w02 = lambda x, y: 1 / (2 * x * 2 * y * (x - y) ** 2)
        self.assertSame(wtilde(0, 2), w02(z1, z2))
        self.assertSame(value, w02(z1, z3) * w01(z2) + w01(z1) * w02(z2, z3))


class LoopEquationTests(ToprecTestCase):
    def test_quartic_curve(self):
        curve = self.solve(self.build(3, QUARTIC))
        table = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        for g, n in [(0, 1), (0, 2), (1, 1), (0, 3)]:
            self.assertReportOk(self.core.toprec.loop_check_linear(curve, table, g, n))
        for g, n in [(1, 1), (0, 3)]:
            self.assertReportOk(self.core.toprec.loop_check_quadratic(curve, table, g, n))

    def test_airy_curve(self):
        curve = self.solve(self.monomial(2))
        table = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        for g, n in [(1, 1), (0, 3)]:
            self.assertReportOk(self.core.toprec.loop_check_linear(curve, table, g, n))
            self.assertReportOk(self.core.toprec.loop_check_quadratic(curve, table, g, n))

    def test_corrupted_correlator_fails(self):
        curve = self.solve(self.monomial(2))
        table = self.core.toprec.topological_recursion(curve, [(1, 1)])
        z1 = self.zetas(curve, 1)[0]
        bad = self.core.toprec.Correlator(1, 1, table.values(1, 1) + 1 / z1**3)
        table.store(bad)
        self.assertFalse(self.core.toprec.loop_check_linear(curve, table, 1, 1).ok)

    def test_correlator_properties(self):
        curve = self.solve(self.build(3, QUARTIC))
        table = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        for g, n in [(1, 1), (0, 3)]:
            self.assertReportOk(self.core.toprec.correlator_check(curve, table.get(g, n)))

    def test_pole_off_branchpoint_is_reported(self):
        curve = self.solve(self.build(3, QUARTIC))
        z1 = self.zetas(curve, 1)[0]
        correlator = self.core.toprec.Correlator(1, 1, 1 / (z1 - 2) ** 2)
        report = self.core.toprec.correlator_check(curve, correlator)
        self.assertFalse(report.ok)


class TutteComparisonTests(ToprecTestCase):
    def test_airy_against_tutte(self):
        model = self.monomial(2)
        tutte = self.core.tutte.solve_table(model, 2, [(1, 1), (0, 3)])
        curve = self.solve(model, 2)
        table = self.core.toprec.topological_recursion(curve, [(1, 1), (0, 3)])
        for g, n in [(1, 1), (0, 3)]:
            self.assertReportOk(self.core.toprec.tutte_check(curve, table.get(g, n), tutte))

    def test_rairy_torus_against_tutte(self):
        model = self.monomial(3)
        tutte = self.core.tutte.solve_table(model, 2, [(1, 1)])
        curve = self.solve(model, 2)
        table = self.core.toprec.higher_recursion(curve, [(1, 1)])
        self.assertReportOk(self.core.toprec.tutte_check(curve, table.get(1, 1), tutte))

    def test_unmarked_face_against_tutte(self):
        model = self.monomial(2, lambda_values=[1])
        tutte = self.core.tutte.solve_table(model, 2, [(1, 1)])
        curve = self.solve(model, 1)
        table = self.core.toprec.topological_recursion(curve, [(1, 1)])
        self.assertReportOk(self.core.toprec.tutte_check(curve, table.get(1, 1), tutte))

    def test_corrupted_series_is_pinpointed(self):
        model = self.monomial(2)
        tutte = self.core.tutte.solve_table(model, 1, [(1, 1)])
        curve = self.solve(model, 1)
        table = self.core.toprec.topological_recursion(curve, [(1, 1)])
        wrong = self.core.toprec.Correlator(1, 1, table.values(1, 1) * 2)
        report = self.core.toprec.tutte_check(curve, wrong, tutte)
        self.assertEqual([item.label for item in report.failures()], ["α̂^1"])


class SheetPolynomialTests(ToprecTestCase):
    def test_sheet_tower_sums(self):
        curve = self.solve(self.build(3, QUARTIC))
        tower = self.core.toprec.SheetTower(curve)
        z1 = self.zetas(curve, 1)[0]
        first = lambda points, one: points[0]
        both = lambda points, one: points[0] * points[1]
        self.assertSame(tower.subset_sum(1, first), -z1)
        self.assertSame(tower.subset_sum(2, both), z1**2 - 3)
        self.assertFalse(tower.subset_sum(1, first, include_first=True))
        self.assertFalse(tower.subset_sum(3, lambda points, one: one))

    def test_disc_polynomials(self):
        curve = self.solve(self.build(3, QUARTIC))
        table = self.core.toprec.CorrelatorTable(curve)
        z1 = self.zetas(curve, 1)[0]
        u = curve.space.gen(self.core.config.U_SYMBOL)
        a = curve.model.alpha
        dV = curve.model.dV
        self.assertSame(self.core.toprec.check_H(curve, table, 0, 1), (dV(u) - dV(z1)) / ((u - z1) * a))
        self.assertSame(self.core.toprec.check_P(curve, table, 0, 1), (dV(u) - dV(z1)) / a)

    def test_P_disc_leading_term(self):
        model = self.monomial(2)
        tutte = self.core.tutte.solve_table(model, 0, [(0, 1)])
        u, z1 = model.u, model.z(1)
        self.assertSame(self.core.toprec.P_polynomial(tutte, 0, 1, -1), u**2 - z1**2)

    def test_equivalence_with_tutte(self):
        model = self.monomial(2)
        tutte = self.core.tutte.solve_table(model, 1, [(0, 2)])
        curve = self.solve(model, 1)
        table = self.core.toprec.CorrelatorTable(curve)
        for g, n in [(0, 1), (0, 2)]:
            self.assertReportOk(self.core.toprec.check_PH_equivalence(curve, tutte, g, n, table))

    def test_quartic_disc_equivalence(self):
        model = self.build(3, QUARTIC)
        tutte = self.core.tutte.solve_table(model, 1, [(0, 1)])
        curve = self.solve(model, 1)
        table = self.core.toprec.CorrelatorTable(curve)
        self.assertReportOk(self.core.toprec.check_PH_equivalence(curve, tutte, 0, 1, table))


if __name__ == "__main__":
    unittest.main()
