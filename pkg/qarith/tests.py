import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, override_settings

from .exceptions import DomainError
from .reports import build_report, compare, merge
from .roots import RootSystem, pochhammer_identities_check, pochhammer_q, qbinom, qfact, qint, res_mod, theta
from .serializers import ComplexField, DeviationReportSerializer
from .sums import (
    appendix_check,
    closed_form_check,
    pascal_check,
    periodicity_check,
    recursion_check,
    sine_product_check,
    sum_S,
    sum_T,
    symmetry_check,
)


class RootSystemTests(SimpleTestCase):
    def test_rejects_small_or_fractional_n(self):
        for N in (1, 0, -3, 2.5, True):
            with self.assertRaises(DomainError):
                RootSystem(N)

    def test_root_of_unity_relations(self):
        for N in (2, 5, 13):
            system = RootSystem(N)
            self.assertEqual(system.half_power(4 * N), 1)
            self.assertAlmostEqual(complex(system.half_power(2 * N)), -1)
            self.assertAlmostEqual(complex(system.s ** (2 * N)), 1)
            self.assertAlmostEqual(complex(system.q), complex(system.s ** 2))

    def test_half_integer_powers(self):
        system = RootSystem(4)
        self.assertAlmostEqual(complex(system.power(Fraction(1, 2))), complex(np.exp(1j * np.pi / 8)))
        self.assertAlmostEqual(complex(system.power(-3)), complex(np.exp(-3j * np.pi / 4)))
        with self.assertRaises(DomainError):
            system.power(Fraction(1, 3))

    def test_real_power_matches_table(self):
        system = RootSystem(6)
        self.assertAlmostEqual(complex(system.real_power(1.5)), complex(system.power(Fraction(3, 2))))

    def test_extended_precision_dtype(self):
        system = RootSystem(5, 'extended')
        self.assertEqual(system.dtype, np.dtype(np.clongdouble))
        self.assertAlmostEqual(float(qint(system, 2).real), 2 * math.cos(math.pi / 5))

    @override_settings(QJK_PRECISION='extended')
    def test_precision_defaults_to_settings(self):
        self.assertEqual(RootSystem(3).precision, 'extended')

    def test_unknown_precision(self):
        with self.assertRaises(DomainError):
            RootSystem(3, 'quad')


class QuantumIntegerTests(SimpleTestCase):
    def test_qint_examples(self):
        self.assertAlmostEqual(complex(qint(RootSystem(5), 1)), 1)
        self.assertEqual(qint(RootSystem(5), 5), 0)
        self.assertAlmostEqual(complex(qint(RootSystem(4), 2)), math.sqrt(2))
        self.assertAlmostEqual(complex(qint(RootSystem(4), -2)), -math.sqrt(2))

    def test_qint_non_integer_argument(self):
        system = RootSystem(5)
        expected = math.sin(math.pi / 10) / math.sin(math.pi / 5)
        self.assertAlmostEqual(complex(qint(system, 0.5)), expected)

    def test_qfact_examples(self):
        self.assertEqual(qfact(RootSystem(5), 0), 1)
        self.assertEqual(qfact(RootSystem(5), 5), 0)
        self.assertEqual(qfact(RootSystem(5), 9), 0)
        self.assertAlmostEqual(complex(qfact(RootSystem(4), 2)), math.sqrt(2))
        with self.assertRaises(DomainError):
            qfact(RootSystem(4), -1)

    def test_qbinom_examples(self):
        self.assertAlmostEqual(complex(qbinom(RootSystem(7), 3, 0)), 1)
        self.assertAlmostEqual(complex(qbinom(RootSystem(7), 3, 3)), 1)
        self.assertAlmostEqual(complex(qbinom(RootSystem(4), 2, 1)), math.sqrt(2))
        for x, y in ((2, 3), (4, 1), (2, -1)):
            with self.assertRaises(DomainError):
                qbinom(RootSystem(4), x, y)

    def test_pochhammer_examples(self):
        system = RootSystem(3)
        self.assertEqual(pochhammer_q(system, system.q, 0), 1)
        self.assertAlmostEqual(complex(pochhammer_q(system, system.q, 1)), complex(1 - system.q))
        for N in (5, 8, 11):
            system = RootSystem(N)
            self.assertAlmostEqual(complex(pochhammer_q(system, system.q, N - 1)), N)

    def test_pochhammer_identities(self):
        for N in (2, 7, 12):
            self.assertTrue(pochhammer_identities_check(RootSystem(N)).passed)

    def test_theta_and_residue(self):
        self.assertEqual(theta(0, 5), 1)
        self.assertEqual(theta(5, 5), 0)
        self.assertEqual(theta(-1, 5), 0)
        self.assertEqual(res_mod(-1, 5), 4)
        self.assertEqual(res_mod(7, 5), 2)

    def test_symmetry_and_positivity(self):
        for N in range(2, 17):
            self.assertTrue(symmetry_check(RootSystem(N)).passed)


class SumTests(SimpleTestCase):
    def test_top_alpha_is_one(self):
        system = RootSystem(6)
        for beta in (-7, 0, 3, 11):
            for mode in ('brute', 'closed'):
                self.assertAlmostEqual(complex(sum_S(system, 5, beta, mode)), 1)

    def test_empty_t_is_one(self):
        system = RootSystem(6)
        for beta in (-4, 0, 9):
            self.assertAlmostEqual(complex(sum_T(system, 0, beta, 'brute')), 1)
            self.assertAlmostEqual(complex(sum_T(system, 0, beta, 'closed')), 1)

    def test_vanishing_cases(self):
        system = RootSystem(5)
        # beta - alpha - 2 >= 0 >= beta + alpha - 2N + 2
        self.assertEqual(sum_S(system, 1, 3, 'closed'), 0)
        self.assertAlmostEqual(complex(sum_S(system, 1, 3, 'brute')), 0)
        # beta + alpha - 1 >= 0 >= beta - alpha + 1
        self.assertEqual(sum_T(system, 2, 1, 'closed'), 0)
        self.assertAlmostEqual(complex(sum_T(system, 2, 1, 'brute')), 0)

    def test_alpha_out_of_range(self):
        system = RootSystem(4)
        for alpha in (-1, 4):
            with self.assertRaises(DomainError):
                sum_S(system, alpha, 0)
        with self.assertRaises(DomainError):
            sum_T(system, 0, 0, mode='symbolic')

    def test_brute_equals_closed(self):
        for N in range(2, 13):
            report = closed_form_check(RootSystem(N))
            self.assertTrue(report.passed, report)

    def test_pascal_and_recursion(self):
        for N in range(2, 13):
            system = RootSystem(N)
            self.assertTrue(pascal_check(system).passed)
            self.assertTrue(recursion_check(system).passed)

    def test_periodicity_is_exact(self):
        for N in (2, 5, 9):
            report = periodicity_check(RootSystem(N))
            self.assertEqual(report.max_deviation, 0.0)
            self.assertTrue(report.passed)

    def test_sine_product(self):
        for N in range(2, 65):
            self.assertTrue(sine_product_check(RootSystem(N)).passed)

    def test_appendix_bundle(self):
        reports = appendix_check(RootSystem(6))
        self.assertEqual(len(reports), 4)
        self.assertTrue(all(report.passed for report in reports))


class ReportTests(SimpleTestCase):
    def test_tolerance_scales_with_magnitude_and_dimension(self):
        report = build_report('demo', 3, 5e-8, scale=10.0, dim=4, tolerance=1e-9)
        self.assertAlmostEqual(report.tolerance, 4e-8)
        self.assertFalse(report.passed)

    @override_settings(QJK_TOLERANCE=1e-3)
    def test_default_tolerance_from_settings(self):
        self.assertTrue(compare('demo', 2, [1.0], [1.0005]).passed)

    def test_merge_keeps_worst(self):
        good = build_report('good', 2, 0.0, 1.0)
        bad = build_report('bad', 2, 1.0, 1.0)
        exact = build_report('exact', 2, 0.0, 1.0, tolerance=0.0)
        merged = merge('all', 2, [good, exact, bad])
        self.assertFalse(merged.passed)
        self.assertEqual(merged.max_deviation, 1.0)
        self.assertEqual(merged.detail, 'bad')

    def test_serializer_renames_passed(self):
        data = DeviationReportSerializer(build_report('demo', 4, 0.0, 1.0)).data
        self.assertIs(data['pass'], True)
        self.assertNotIn('passed', data)
        self.assertEqual(data['N'], 4)

    def test_complex_field(self):
        field = ComplexField()
        self.assertEqual(field.to_representation(np.complex128(1.5 - 2j)), [1.5, -2.0])
        self.assertEqual(field.to_internal_value([0.5, 1]), complex(0.5, 1))
