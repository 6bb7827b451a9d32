import cmath
import dataclasses
from unittest import mock

import numpy as np
from django.test import SimpleTestCase

from qarith.exceptions import AxiomViolation, DomainError
from qarith.roots import RootSystem

from .checks import (
    charge_conservation_check,
    check_gauge_through,
    check_lifted_ybe,
    check_twist_gauge,
    check_ybe,
    closed_form_reports,
    constant_identity_check,
    equivalence_check,
    inverse_reports,
    mu_reports,
    operator_report,
    shift_invariance_check,
    support_check,
)
from .enhanced import axiom_reports, enhanced_operator, jones_inverse, make_enhanced
from .matrices import (
    build_D,
    build_mu,
    build_R_jones,
    build_R_kashaev,
    build_W,
    closed_form_tilde,
    conjugate_gauge,
    ordering_case,
    rho,
)
from .operators import Operator, compose, flatten_index, unflatten_index
from .serializers import OperatorDumpSerializer


class OperatorTests(SimpleTestCase):
    def test_flattening_is_row_major(self):
        self.assertEqual(flatten_index((1, 2), 3), 5)
        self.assertEqual(unflatten_index(5, 3, 2), (1, 2))
        self.assertEqual(unflatten_index(flatten_index((2, 0, 1), 4), 4, 3), (2, 0, 1))

    def test_shape_is_checked(self):
        with self.assertRaises(DomainError):
            Operator(np.eye(3), 2, 2)

    def test_partial_trace_of_identity(self):
        identity = Operator.identity(3, 2, np.complex128)
        traced = identity.partial_trace()
        self.assertEqual(traced.arity, 1)
        self.assertEqual(traced.max_deviation(Operator.identity(3, 1, np.complex128).scaled(3)), 0.0)

    def test_written_order_composition(self):
        first = Operator(np.array([[0, 1], [0, 0]]), 2, 1)
        second = Operator(np.array([[1, 0], [0, 2]]), 2, 1)
        # Input v_0 goes to v_1 under first, which second then doubles
        self.assertEqual(compose(first, second).entry((0,), (1,)), 2)

    def test_tensor_and_pad(self):
        x = Operator(np.array([[0, 1], [1, 0]]), 2, 1)
        padded = x.pad(1, 1)
        self.assertEqual(padded.arity, 3)
        self.assertEqual(padded.entry((0, 0, 1), (0, 1, 1)), 1)
        self.assertEqual(x.tensor(x).entry((0, 1), (1, 0)), 1)

    def test_dense_entries_are_output_major(self):
        matrix = np.zeros((4, 4))
        matrix[1, 2] = 7.0
        entries = list(Operator(matrix, 2, 2).dense_entries())
        self.assertEqual(len(entries), 16)
        self.assertIn((2, 1, 7.0), [(row, col, float(value)) for row, col, value in entries])


class GaugeMatrixTests(SimpleTestCase):
    def test_w_at_two(self):
        np.testing.assert_allclose(build_W(RootSystem(2)).dense(), [[1, 1], [1, -1]], atol=1e-12)

    def test_w_inverse(self):
        for N in range(2, 17):
            system = RootSystem(N)
            product = compose(build_W(system), build_W(system, inverse=True))
            self.assertTrue(operator_report('w', product, Operator.identity(N, 1, system.dtype)).passed)

    def test_d_has_unit_modulus(self):
        system = RootSystem(7)
        diagonal = build_D(system).dense().diagonal()
        np.testing.assert_allclose(np.abs(diagonal), np.ones(7))
        self.assertEqual(build_D(system).nnz, 7)

    def test_gauge_of_identity(self):
        system = RootSystem(4)
        identity = Operator.identity(4, 2, system.dtype)
        self.assertTrue(operator_report('gauge-id', conjugate_gauge(system, identity), identity).passed)

    def test_gauge_needs_arity_two(self):
        system = RootSystem(3)
        with self.assertRaises(DomainError):
            conjugate_gauge(system, Operator.identity(3, 1, system.dtype))


class JonesMatrixTests(SimpleTestCase):
    def test_corner_entry_at_two(self):
        R = build_R_jones(RootSystem(2))
        self.assertAlmostEqual(complex(R.entry((0, 0), (0, 0))), cmath.exp(1j * cmath.pi / 4))

    def test_single_input_reaches_at_most_n_outputs(self):
        N = 6
        R = build_R_jones(RootSystem(N))
        row_counts = np.diff(R.matrix.indptr)
        self.assertLessEqual(row_counts.max(), N)

    def test_charge_conservation(self):
        for N in range(2, 13):
            self.assertTrue(charge_conservation_check(build_R_jones(RootSystem(N))).passed)

    def test_gauge_through(self):
        for N in (2, 7, 12):
            self.assertTrue(check_gauge_through(RootSystem(N)).passed)

    def test_flipped_conjugate_inverse(self):
        for N in (2, 5, 9):
            system = RootSystem(N)
            R = build_R_jones(system)
            product = compose(R, jones_inverse(R))
            self.assertTrue(operator_report('inv', product, Operator.identity(N, 2, system.dtype)).passed)

    def test_inverse_swaps_and_conjugates(self):
        N = 4
        R = build_R_jones(RootSystem(N))
        inverse = jones_inverse(R)
        self.assertEqual(inverse.entry((1, 2), (3, 0)), np.conj(R.entry((2, 1), (0, 3))))
        self.assertEqual(inverse.nnz, R.nnz)


class ClosedFormTests(SimpleTestCase):
    def test_orderings(self):
        self.assertEqual(ordering_case(0, 1, 0, 1), 1)
        self.assertEqual(ordering_case(1, 2, 0, 0), 2)
        self.assertEqual(ordering_case(0, 1, 2, 1), 3)
        self.assertEqual(ordering_case(0, 0, 0, 0), 4)
        self.assertIsNone(ordering_case(0, 1, 1, 0))
        # b = a with c >= d >= b is case (iv) only when a >= c
        self.assertIsNone(ordering_case(1, 1, 2, 2))

    def test_zero_corner_at_two(self):
        system = RootSystem(2)
        tilde = closed_form_tilde(system)
        self.assertAlmostEqual(complex(tilde.entry((0, 0), (0, 0))), complex(rho(system, 0, 0, 0, 0)))

    def test_closed_forms_match(self):
        for N in range(2, 13):
            for report in closed_form_reports(RootSystem(N)):
                self.assertTrue(report.passed, report)

    def test_gauge_equivalence(self):
        for N in range(2, 17):
            report = equivalence_check(RootSystem(N))
            self.assertTrue(report.passed, report)

    def test_kashaev_support(self):
        for N in range(2, 9):
            self.assertTrue(support_check(RootSystem(N)).passed)

    def test_unknown_mode(self):
        with self.assertRaises(DomainError):
            build_R_kashaev(RootSystem(3), mode='table')

    def test_constant_identities(self):
        for N in (2, 9, 16):
            report = constant_identity_check(RootSystem(N))
            self.assertTrue(report.passed, report)


class MuTests(SimpleTestCase):
    def test_jones_mu_is_traceless(self):
        for N in (2, 5, 8):
            self.assertAlmostEqual(complex(build_mu(RootSystem(N), 'jones').trace()), 0)

    def test_kashaev_mu_at_two(self):
        system = RootSystem(2)
        mu = build_mu(system, 'kashaev')
        self.assertAlmostEqual(complex(mu.entry((0,), (1,))), complex(-system.s))
        self.assertAlmostEqual(complex(mu.entry((1,), (0,))), complex(-system.s))
        self.assertEqual(mu.entry((0,), (0,)), 0)

    def test_conjugation_and_power(self):
        for N in range(2, 17):
            for report in mu_reports(RootSystem(N)):
                self.assertTrue(report.passed, report)

    def test_unknown_kind(self):
        with self.assertRaises(DomainError):
            build_mu(RootSystem(3), 'alexander')


class YangBaxterTests(SimpleTestCase):
    def test_both_operators(self):
        for N in range(2, 9):
            system = RootSystem(N)
            self.assertTrue(check_ybe(build_R_jones(system)).passed)
            self.assertTrue(check_ybe(build_R_kashaev(system)).passed)

    def test_perturbed_operator_fails(self):
        system = RootSystem(3)
        R = build_R_jones(system)
        bump = Operator.from_entries(3, 2, [1], [3], [0.1], system.dtype)
        self.assertFalse(check_ybe(R.plus(bump)).passed)

    def test_lifted_identity(self):
        for N in range(2, 6):
            self.assertTrue(check_lifted_ybe(RootSystem(N)).passed)

    def test_shift_invariance(self):
        for N in range(2, 9):
            self.assertTrue(shift_invariance_check(RootSystem(N)).passed)


class EnhancementTests(SimpleTestCase):
    def test_axioms_hold(self):
        for N in range(2, 13):
            system = RootSystem(N)
            jones = make_enhanced(system, 'jones')
            kashaev = make_enhanced(system, 'kashaev')
            self.assertAlmostEqual(complex(jones.alpha), complex(system.half_power(N * N - 1)))
            self.assertAlmostEqual(complex(kashaev.alpha), complex(-system.s))
            self.assertEqual(jones.beta, 1)
            self.assertEqual(kashaev.beta, 1)
            self.assertTrue(jones.conserves_charge)
            self.assertFalse(kashaev.conserves_charge)

    def test_wrong_twist_is_reported(self):
        operator = make_enhanced(RootSystem(3), 'jones')
        broken = dataclasses.replace(operator, alpha=operator.system.one)
        failed = [report.name for report in axiom_reports(broken) if not report.passed]
        self.assertEqual(failed, ['jones:twist+', 'jones:twist-'])

    def test_violation_raises(self):
        with mock.patch('rmatrix.enhanced.twist_scalar', lambda system, kind: system.one):
            with self.assertRaises(AxiomViolation) as caught:
                make_enhanced(RootSystem(3), 'kashaev')
        self.assertEqual(caught.exception.axiom, 'kashaev:twist+')

    def test_inverses_against_direct_inversion(self):
        for N in range(2, 9):
            for report in inverse_reports(RootSystem(N)):
                self.assertTrue(report.passed, report)

    def test_twist_gauge(self):
        for N in range(2, 9):
            self.assertTrue(check_twist_gauge(RootSystem(N)).passed)

    def test_cache_resolves_default_precision(self):
        self.assertIs(enhanced_operator(3, 'jones'), enhanced_operator(3, 'jones', 'double'))

    def test_extended_precision_operator(self):
        operator = make_enhanced(RootSystem(4, 'extended'), 'kashaev')
        self.assertEqual(operator.R.dtype, np.dtype(np.clongdouble))

    def test_axioms_hold_at_large_n(self):
        # Kashaev gauge products are dense with N^4 entries
        cases = [(N, 'jones') for N in (17, 20, 24, 32)] + [(N, 'kashaev') for N in (17, 24)]
        for N, kind in cases:
            with self.subTest(N=N, kind=kind):
                operator = make_enhanced(RootSystem(N), kind, verify=False)
                for report in axiom_reports(operator):
                    self.assertTrue(report.passed, report)


class DumpTests(SimpleTestCase):
    def test_kashaev_dump_at_two(self):
        operator = build_R_kashaev(RootSystem(2))
        data = OperatorDumpSerializer({'N': 2, 'kind': 'kashaev', 'operator': operator}).data
        self.assertEqual(data['dim'], 4)
        self.assertEqual(len(data['entries']), 16)
        row, col, re, im = data['entries'][0]
        self.assertEqual((row, col), (0, 0))
        self.assertIsInstance(re, float)
