from fractions import Fraction

from django.test import SimpleTestCase

from qarith.exceptions import DomainError
from qarith.roots import RootSystem

from .representations import (
    build_E,
    build_F,
    cartan_check,
    cartan_transform,
    compare_triples,
    relations_check,
    representation_reports,
)


class RepresentationTests(SimpleTestCase):
    def test_e_relations(self):
        for N in range(2, 17):
            report = relations_check(RootSystem(N), build_E(RootSystem(N)))
            self.assertTrue(report.passed, report)

    def test_f_relations_at_half_n_minus_one(self):
        for N in range(2, 17):
            system = RootSystem(N)
            self.assertTrue(relations_check(system, build_F(system, Fraction(N - 1, 2))).passed)

    def test_f_relations_off_center(self):
        system = RootSystem(6)
        for p in (2, 2.75, 3):
            self.assertTrue(relations_check(system, build_F(system, p)).passed)

    def test_e_entries(self):
        system = RootSystem(5)
        E = build_E(system)
        self.assertAlmostEqual(complex(E.K.entry((0,), (0,))), complex(system.power(Fraction(-2))))
        # [N] = 0, so e_(N-1) has no image under X
        self.assertEqual(E.X.matrix.getrow(4).nnz, 0)

    def test_f_entries_at_center(self):
        system = RootSystem(3)
        F = build_F(system, 1)
        self.assertAlmostEqual(complex(F.X.entry((1,), (0,))), 1)
        self.assertAlmostEqual(complex(F.Y.entry((0,), (1,))), 1)
        self.assertAlmostEqual(complex(F.K.entry((2,), (2,))), complex(system.power(-1)))

    def test_negative_radicand(self):
        with self.assertRaises(DomainError):
            build_F(RootSystem(5), 0)

    def test_cartan_coincidence(self):
        for N in range(2, 17):
            report = cartan_check(RootSystem(N))
            self.assertTrue(report.passed, report)

    def test_cartan_needs_the_center(self):
        system = RootSystem(6)
        image = cartan_transform(build_F(system, Fraction(5, 2) + Fraction(1, 4)))
        self.assertFalse(compare_triples(system, image, build_E(system), 'cartan').passed)

    def test_cartan_is_an_involution(self):
        system = RootSystem(7)
        F = build_F(system, 3)
        twice = cartan_transform(cartan_transform(F))
        for part in ('X', 'Y', 'K'):
            self.assertEqual(getattr(twice, part).max_deviation(getattr(F, part)), 0.0)

    def test_report_bundle(self):
        reports = representation_reports(RootSystem(4))
        self.assertEqual([report.name for report in reports], ['relations:E', 'relations:F', 'cartan'])
        self.assertTrue(all(report.passed for report in reports))
