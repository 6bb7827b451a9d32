import dataclasses
import math
import unittest
from types import SimpleNamespace
from unittest import mock

from django.conf import settings
from django.test import SimpleTestCase, override_settings
from rest_framework.renderers import JSONRenderer

from braids.knot_table import KnotEntry, load_constants, load_knot_table, lookup_knot
from braids.words import parse_braid
from qarith.exceptions import DomainError, FitError, ZeroInvariantError

from .growth import GrowthPoint, GrowthSeries, fit_limit, growth_sequence, simplicial_report
from .serializers import GrowthSeriesSerializer, SimplicialReportSerializer

FIGURE_EIGHT_VOLUME = 2.029883212819307


def series_of(values, start=5, name='demo'):
    points = tuple(GrowthPoint(start + k, math.exp(value * (start + k) / (2 * math.pi)), value)
                   for k, value in enumerate(values))
    return GrowthSeries(name, points)


class GrowthSequenceTests(SimpleTestCase):
    def test_unknot_is_flat(self):
        series = growth_sequence(lookup_knot('unknot'), range(2, 21))
        self.assertEqual(series.N_values, list(range(2, 21)))
        for point in series.points:
            self.assertAlmostEqual(point.v_N, 0.0)
            self.assertAlmostEqual(point.abs_J, 1.0)

    def test_points_are_sorted(self):
        series = growth_sequence(lookup_knot('3_1'), [5, 3, 4, 3])
        self.assertEqual(series.N_values, [3, 4, 5])
        self.assertAlmostEqual(series.v3, load_constants()['v3'])

    def test_figure_eight_values(self):
        series = growth_sequence(lookup_knot('4_1'), range(2, 6))
        self.assertAlmostEqual(series.points[0].abs_J, 5.0, places=8)
        self.assertAlmostEqual(series.points[0].v_N, math.pi * math.log(5.0), places=8)
        self.assertEqual(series.reference, FIGURE_EIGHT_VOLUME)

    def test_split_closure_is_rejected(self):
        split = KnotEntry('split', parse_braid('2:'), None, None, 'two unlinked circles')
        with self.assertRaises(DomainError):
            growth_sequence(split, range(2, 4))

    def test_vanishing_invariant_raises(self):
        vanishing = SimpleNamespace(scalar=0j)
        with mock.patch('volume.growth.one_one_invariant', return_value=vanishing):
            with self.assertRaises(ZeroInvariantError) as caught:
                growth_sequence(lookup_knot('4_1'), [9])
        self.assertEqual(caught.exception.N, 9)

    def test_precisions_agree(self):
        N_values = [2, 3, 4, 5, 6, 7, 8, 12, 16]
        for entry in load_knot_table():
            double = growth_sequence(entry, N_values, precision='double')
            extended = growth_sequence(entry, N_values, precision='extended')
            for first, second in zip(double.points, extended.points):
                with self.subTest(knot=entry.name, N=first.N):
                    self.assertLess(abs(first.v_N - second.v_N), 1e-6)

    @override_settings(QJK_PRECISION='double', QJK_EXTENDED_ABOVE_N=20)
    def test_default_precision_escalates(self):
        entry = lookup_knot('3_1')
        with self.assertLogs('volume.growth', level='WARNING'):
            escalated = growth_sequence(entry, [24])
        extended = growth_sequence(entry, [24], precision='extended')
        self.assertEqual(escalated.points, extended.points)

    @override_settings(QJK_PRECISION='double', QJK_EXTENDED_ABOVE_N=20)
    def test_explicit_precision_is_kept(self):
        with mock.patch('volume.growth.logger') as logger:
            growth_sequence(lookup_knot('3_1'), [21], precision='double')
        logger.warning.assert_not_called()

    def test_word_choice_does_not_matter(self):
        entry = lookup_knot('4_1')
        other = KnotEntry('4_1', parse_braid('3: 2 1 -2 1 -2 -2'), FIGURE_EIGHT_VOLUME, 5, 'conjugated word')
        for first, second in zip(growth_sequence(entry, range(2, 7)).points,
                                 growth_sequence(other, range(2, 7)).points):
            self.assertAlmostEqual(first.v_N, second.v_N, places=8)


class FitTests(SimpleTestCase):
    def test_constant_series(self):
        fit = fit_limit(series_of([1.5] * 6))
        self.assertAlmostEqual(fit.limit, 1.5)
        self.assertAlmostEqual(fit.a, 0.0)
        self.assertAlmostEqual(fit.b, 0.0)
        self.assertAlmostEqual(fit.residual, 0.0)

    def test_exact_model_is_recovered(self):
        values = [2.0 + 3.0 * math.log(N) / N - 1.0 / N for N in range(10, 20)]
        fit = fit_limit(series_of(values, start=10))
        self.assertAlmostEqual(fit.limit, 2.0, places=8)
        self.assertAlmostEqual(fit.a, 3.0, places=6)
        self.assertAlmostEqual(fit.b, -1.0, places=6)

    def test_plain_takes_last_value(self):
        fit = fit_limit(series_of([5.0, 4.0, 3.0, 2.5, 2.25]), 'plain')
        self.assertEqual((fit.model, fit.limit), ('plain', 2.25))

    def test_too_few_points(self):
        with self.assertRaises(FitError):
            fit_limit(series_of([1.0] * 4))

    def test_rank_deficient(self):
        points = tuple(GrowthPoint(7, 2.0, 1.0) for _ in range(5))
        with self.assertRaises(FitError):
            fit_limit(GrowthSeries('stuck', points))

    def test_unknown_model(self):
        with self.assertRaises(DomainError):
            fit_limit(series_of([1.0] * 5), 'spline')


class SimplicialReportTests(SimpleTestCase):
    def test_unknot_has_zero_norm(self):
        series = growth_sequence(lookup_knot('unknot'), range(2, 8))
        report = simplicial_report(dataclasses.replace(series, fit=fit_limit(series)))
        self.assertAlmostEqual(report.norm_estimate, 0.0)
        self.assertEqual(report.reference_norm, 0.0)

    def test_granny_is_additive(self):
        series = growth_sequence(lookup_knot('granny'), range(2, 9))
        report = simplicial_report(dataclasses.replace(series, fit=fit_limit(series)))
        self.assertEqual(report.summands, ('3_1', '3_1'))
        self.assertTrue(report.additivity.passed, report.additivity)
        self.assertLess(abs(report.limit - report.summand_limit), 0.05)

    def test_norm_uses_shipped_constant(self):
        series = series_of([2.1, 2.08, 2.06, 2.05, 2.04], name='4_1')
        report = simplicial_report(series, constants={'v3': 1.0149416064096536})
        self.assertEqual(report.model, 'plain')
        self.assertAlmostEqual(report.norm_estimate, 2.04 / 1.0149416064096536)
        self.assertAlmostEqual(report.reference_norm, 2.0, places=3)
        self.assertAlmostEqual(report.relative_error, abs(2.04 - FIGURE_EIGHT_VOLUME) / FIGURE_EIGHT_VOLUME)
        self.assertIsNone(report.additivity)

    def test_serialized_report(self):
        series = growth_sequence(lookup_knot('3_1'), range(2, 5))
        data = SimplicialReportSerializer(simplicial_report(series)).data
        self.assertEqual(data['knot'], '3_1')
        self.assertIsNone(data['additivity'])
        rendered = JSONRenderer().render(GrowthSeriesSerializer(series).data)
        self.assertIn(b'"absJ"', rendered)


@unittest.skipUnless(settings.QJK_RUN_SLOW, 'set QJK_RUN_SLOW=True for the volume trend runs')
class VolumeTrendTests(SimpleTestCase):
    def test_figure_eight_decreases_to_its_volume(self):
        series = growth_sequence(lookup_knot('4_1'), range(10, 51))
        values = [point.v_N for point in series.points]
        self.assertTrue(all(later < earlier for earlier, later in zip(values, values[1:])))
        self.assertTrue(all(value > FIGURE_EIGHT_VOLUME for value in values))

    def test_figure_eight_corrected_fit(self):
        fit = fit_limit(growth_sequence(lookup_knot('4_1'), range(10, 61)), 'corrected')
        self.assertLess(abs(fit.limit - FIGURE_EIGHT_VOLUME) / FIGURE_EIGHT_VOLUME, 0.05)

    def test_trefoil_limit_vanishes(self):
        fit = fit_limit(growth_sequence(lookup_knot('3_1'), range(10, 61)), 'corrected')
        self.assertLess(abs(fit.limit), 0.2)

    def test_default_precision_matches_extended_through_forty(self):
        for entry in load_knot_table():
            default = growth_sequence(entry, range(2, 41))
            extended = growth_sequence(entry, range(2, 41), precision='extended')
            for first, second in zip(default.points, extended.points):
                with self.subTest(knot=entry.name, N=first.N):
                    self.assertLess(abs(first.v_N - second.v_N), 1e-6)
