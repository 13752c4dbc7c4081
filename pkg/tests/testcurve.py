import importlib
import sys
import types
import unittest
from pathlib import Path

from sympy import QQ


ROOT = Path(__file__).resolve().parents[1]
PACKAGE_NAME = "kontsevich_curve_testpkg"
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
        curve=importlib.import_module(f"{CORE_PACKAGE_NAME}.curve"),
        tutte=importlib.import_module(f"{CORE_PACKAGE_NAME}.tutte"),
        algebra=importlib.import_module(f"{CORE_PACKAGE_NAME}.algebra"),
        model=importlib.import_module(f"{CORE_PACKAGE_NAME}.model"),
        config=importlib.import_module(f"{CORE_PACKAGE_NAME}.config"),
        errors=importlib.import_module(f"{CORE_PACKAGE_NAME}.errors"),
    )


class CurveTestCase(unittest.TestCase):
    def setUp(self):
        self.core = _load_core()
        self.ZETA = self.core.config.ZETA_SYMBOL
        self.ALPHA = self.core.config.ALPHA_SYMBOL

    def build(self, r, potential=None, **kwargs):
        return self.core.model.build_model(r, potential, **kwargs)

    def monomial(self, r, **kwargs):
        return self.build(r, self.core.model.monomial_potential(r), **kwargs)

    def solve(self, model, order):
        return self.core.curve.solve_curve(model, order)

    def assertReportOk(self, report):
        self.assertTrue(report.ok, [item.to_dict() for item in report.failures()])


class SolveCurveTests(CurveTestCase):
    def test_no_unmarked_faces_gives_potential(self):
        curve = self.solve(self.build(3, None), 2)
        zeta = curve.zeta

        self.assertEqual(curve.Q.coefficient(0), curve.model.dV(zeta))
        self.assertEqual(curve.Q.coefficient(1), 0)
        self.assertEqual(curve.Q.coefficient(2), 0)
        self.assertEqual(curve.xi, [])
        self.assertEqual(curve.y.coefficient(0), zeta)
        self.assertEqual(curve.y.coefficient(1), 0)

    def test_cubic_potential_constant_term(self):
        curve = self.solve(self.monomial(2, N=1), 3)
        zeta = curve.zeta
        lam = curve.model.lambda_value(1)

        self.assertEqual(curve.Q.coefficient(0), zeta**2)
        # Q = ζ² + 2t_0，t_0 = α̂/(2λ) + α̂²/(4λ⁴) + 5α̂³/(16λ⁷) + …
        self.assertEqual(curve.Q.coefficient(1), 1 / lam)
        self.assertEqual(curve.Q.coefficient(2), 1 / (2 * lam**4))
        self.assertEqual(curve.Q.coefficient(3), QQ(5, 8) / lam**7)

    def test_cubic_potential_pole_position(self):
        curve = self.solve(self.monomial(2, N=1), 2)
        lam = curve.model.lambda_value(1)

        # ξ = √(λ² − 2t_0)
        self.assertEqual(curve.xi[0].coefficient(0), lam)
        self.assertEqual(curve.xi[0].coefficient(1), -1 / (2 * lam**2))

    def test_invariants_hold(self):
        cases = [
            (self.monomial(2, N=1), 3),
            (self.build(3, [0, -3, 0, 1], N=1), 2),
            (self.build(2, [0, 1, 1], lambda_values=["0", "0"]), 2),
        ]
        for model, order in cases:
            with self.subTest(r=model.r, N=model.N):
                self.assertReportOk(self.core.curve.curve_invariants_check(self.solve(model, order)))

    def test_zeta_of_z_inverts_Q(self):
        curve = self.solve(self.monomial(2, N=1), 2)
        model = curve.model
        z = model.z(1)
        zeta_z = self.core.curve.zeta_of_z(curve, "z1")

        value = self.core.algebra.series_substitute(
            curve.Q_rational(),
            {self.ZETA: zeta_z, self.ALPHA: self.core.curve.alpha_unit(model)},
            3,
        )

        self.assertEqual(value.coefficient(0), model.dV(z))
        self.assertEqual(value.coefficient(1), 0)
        self.assertEqual(value.coefficient(2), 0)

    def test_degenerate_lambda_is_rejected(self):
        with self.assertRaises(self.core.errors.NonGenericError):
            self.solve(self.monomial(3, lambda_values=["0"]), 1)
        with self.assertRaises(self.core.errors.NonGenericError):
            self.solve(self.monomial(2, lambda_values=["1", "-1"]), 1)

    def test_equal_lambdas_are_grouped(self):
        curve = self.solve(self.build(2, [0, 1, 1], lambda_values=["0", "0"]), 1)

        self.assertEqual(len(curve.groups), 1)
        self.assertEqual(curve.groups[0][1], 2)
        weight = curve.residue_weight(0)
        self.assertEqual(weight.coefficient(1), 2)

    def test_curve_serialises(self):
        data = self.solve(self.monomial(2, N=1), 1).to_dict()

        self.assertEqual(data["r"], 2)
        self.assertEqual(sorted(data["Q"]), ["0", "1"])
        self.assertEqual(data["xi"][0]["multiplicity"], 1)


class DifferentialTests(CurveTestCase):
    def test_y_at_pole_raises(self):
        curve = self.solve(self.monomial(2, N=1), 1)

        with self.assertRaises(self.core.errors.ZeroDenominatorError):
            self.core.curve.y_at(curve, curve.model.lambda_value(1))

    def test_y_at_regular_point(self):
        curve = self.solve(self.monomial(2, N=1), 1)
        lam = curve.model.lambda_value(1)

        value = self.core.curve.y_at(curve, 2 * lam)

        self.assertEqual(value.coefficient(0), 2 * lam)
        self.assertEqual(value.coefficient(1), 1 / (2 * lam**2))

    def test_omega01_residue(self):
        curve = self.solve(self.monomial(2, N=1), 2)
        lam = curve.model.lambda_value(1)
        omega = self.core.curve.omega01(curve)

        residue = self.core.algebra.residue_of_rational(omega.coefficient(0), self.ZETA, lam)
        self.assertEqual(residue, 1)
        residue = self.core.algebra.residue_of_rational(omega.coefficient(1), self.ZETA, lam)
        self.assertEqual(residue, 0)

    def test_omega02_is_bergman_kernel(self):
        curve = self.solve(self.monomial(2), 0)
        z1, z2 = curve.space.gens("zeta1", "zeta2")

        self.assertEqual(self.core.curve.omega02(curve), 1 / (z1 - z2) ** 2)

    def test_shifted_curve_for_vanishing_lambda(self):
        curve = self.solve(self.build(5, [0, 1, 0, 1, 0, 1], lambda_values=["0"]), 2)
        coeffs = curve.Q_coefficients()
        u = curve.model.u

        for d in range(3):
            self.assertEqual(curve.xi[0].coefficient(d), 0)
        # Q′(0) = 1 + 3c + 10c²，c = α̂/Q′(0)
        self.assertEqual([coeffs[1].coefficient(d) for d in range(3)], [1, 3, 1])
        self.assertEqual([coeffs[3].coefficient(d) for d in range(3)], [1, 5, -15])
        self.assertEqual([coeffs[5].coefficient(d) for d in range(3)], [1, 0, 0])
        for k in (0, 2, 4):
            self.assertFalse(coeffs[k])

        shifted = self.core.curve.shifted_curve(curve)
        self.assertEqual([shifted.weight.coefficient(d) for d in range(3)], [0, 1, -3])
        self.assertEqual(shifted.x.coefficient(0), u + u**3 + u**5)
        self.assertEqual(shifted.y.coefficient(1), 1 / u)

    def test_shifted_curve_needs_single_lambda(self):
        curve = self.solve(self.monomial(2, N=2), 1)

        with self.assertRaises(self.core.errors.ConfigError):
            self.core.curve.shifted_curve(curve)


class BranchpointTests(CurveTestCase):
    def test_two_rational_branchpoints(self):
        curve = self.solve(self.build(3, [0, -3, 0, 1]), 0)
        points = self.core.curve.branchpoints(curve)

        self.assertEqual(len(points), 2)
        self.assertTrue(all(bp.simple and bp.degree == 1 for bp in points))
        self.assertCountEqual([bp.rational_value() for bp in points], [curve.space.const(1), curve.space.const(-1)])

    def test_irrational_branchpoint_modulus_text(self):
        curve = self.solve(self.build(3, [0, -2, 0, 1]), 0)
        points = [bp for bp in self.core.curve.branchpoints(curve) if bp.degree > 1]

        self.assertEqual(len(points), 1)
        self.assertEqual(points[0].ring.modulus_text(), f"{points[0].ring.name}**2 - 2/3")

    def test_monomial_has_single_ramified_point(self):
        curve = self.solve(self.monomial(4), 0)
        points = self.core.curve.branchpoints(curve)

        self.assertEqual(len(points), 1)
        self.assertEqual(points[0].multiplicity, 3)
        self.assertEqual(points[0].rational_value(), 0)

    def test_quartic_with_unmarked_face_has_conjugate_pair(self):
        curve = self.solve(self.monomial(3, N=1), 2)
        points = self.core.curve.branchpoints(curve)
        t0 = self.core.curve.zeta_coeffs(curve.Q_rational())[1] / 3

        self.assertEqual(len(points), 1)
        self.assertEqual(points[0].degree, 2)
        self.assertEqual(points[0].point ** 2, -t0)

    def test_local_deck_at_simple_branchpoint(self):
        curve = self.solve(self.build(3, [0, -3, 0, 1]), 0)
        point = next(bp for bp in self.core.curve.branchpoints(curve) if bp.rational_value() == 1)

        sigma = self.core.curve.deck_local(curve, point, 4)

        self.assertEqual(sigma.coefficient(0), 1)
        self.assertEqual(sigma.coefficient(1), -1)
        self.assertEqual(sigma.coefficient(2), QQ(-1, 3))
        self.assertEqual(sigma.coefficient(3), QQ(-1, 9))
        self.assertReportOk(self.core.curve.deck_check(curve, point, 6))

    def test_local_deck_for_square_is_reflection(self):
        curve = self.solve(self.monomial(2), 0)
        point = self.core.curve.branchpoints(curve)[0]

        sigma = self.core.curve.deck_local(curve, point, 5)

        self.assertEqual(sigma.coefficient(1), -1)
        for k in (0, 2, 3, 4):
            self.assertEqual(sigma.coefficient(k), 0)

    def test_local_deck_rejects_ramified_point(self):
        curve = self.solve(self.monomial(3), 0)
        point = self.core.curve.branchpoints(curve)[0]

        with self.assertRaises(self.core.errors.NonGenericError):
            self.core.curve.deck_local(curve, point, 3)

    def test_global_decks(self):
        curve = self.solve(self.monomial(2, N=1), 2)
        (sigma,) = self.core.curve.global_decks(curve)
        Q = curve.Q_rational()
        self.assertEqual(self.core.algebra.substitute(Q, {self.ZETA: sigma}), Q)

        curve = self.solve(self.monomial(3), 0)
        decks = self.core.curve.global_decks(curve)
        self.assertEqual(len(decks), 2)
        for deck in decks:
            self.assertEqual(deck**3, curve.zeta**3)

        with self.assertRaises(self.core.errors.NonGenericError):
            self.core.curve.global_decks(self.solve(self.build(3, [0, -3, 0, 1]), 0))


class LoopTests(CurveTestCase):
    def test_linear_loop_equations(self):
        cases = [
            (self.build(3, [0, -3, 0, 1]), 0),
            (self.monomial(2, N=1), 2),
            (self.monomial(3, N=1), 1),
        ]
        for model, order in cases:
            with self.subTest(r=model.r, N=model.N):
                self.assertReportOk(self.core.curve.disc_cylinder_loop_check(self.solve(model, order)))

    def test_sheet_sum_of_coordinate(self):
        curve = self.solve(self.build(3, [0, -3, 1, 2]), 0)

        total = self.core.curve.sheet_sum(curve, lambda w: w)

        self.assertEqual(total, QQ(-1, 2))

    def test_disc_matches_tutte(self):
        model = self.monomial(2, N=1)
        table = self.core.tutte.solve_table(model, 1, [(0, 1)])
        curve = self.solve(model, 2)

        report = self.core.curve.omega01_check(curve, table)

        self.assertEqual(len(report.items), 3)
        self.assertReportOk(report)

    def test_cylinder_matches_tutte(self):
        cases = [(self.monomial(2, N=1), 1), (self.build(3, [0, -3, 0, 1]), 0)]
        for model, order in cases:
            with self.subTest(r=model.r, N=model.N):
                table = self.core.tutte.solve_table(model, order, [(0, 2)])
                report = self.core.curve.omega02_check(self.solve(model, order), table)
                self.assertEqual(len(report.items), 2 + order + 1)
                self.assertReportOk(report)


if __name__ == "__main__":
    unittest.main()
