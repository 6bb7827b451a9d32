import json
from io import StringIO
from unittest import mock

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from qarith.exceptions import ScalarnessError
from qarith.reports import build_report

from .config import RunConfig, parse_n_range
from .output import format_number


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out, stderr=StringIO())
    return out.getvalue()


class ConfigTests(SimpleTestCase):
    def test_no_contrib_apps(self):
        self.assertFalse([app for app in settings.INSTALLED_APPS if app.startswith('django.contrib')])
        self.assertIn('rest_framework', settings.INSTALLED_APPS)

    def test_ranges(self):
        self.assertEqual(parse_n_range('2..5'), (2, 3, 4, 5))
        self.assertEqual(parse_n_range('5'), (5,))
        self.assertEqual(parse_n_range('9,3,3'), (3, 9))

    def test_bad_ranges_are_usage_errors(self):
        for text in ('1..3', 'x', '5..2', '2..'):
            with self.assertRaises(CommandError) as caught:
                parse_n_range(text)
            self.assertEqual(caught.exception.returncode, 2)

    def test_run_config(self):
        config = RunConfig.from_options('verify', {'precision': 'extended', 'threads': 2}, (2, 3))
        self.assertEqual((config.precision, config.threads, config.output_format), ('extended', 2, 'json'))
        with self.assertRaises(CommandError):
            RunConfig.from_options('verify', {'tolerance': -1.0}, (2,))

    def test_number_format(self):
        self.assertEqual(format_number(0.1), '0.10000000000000001')
        self.assertEqual(format_number(7), '7')


class VerifyCommandTests(SimpleTestCase):
    def test_ybe_and_equivalence(self):
        reports = json.loads(run('verify', '--checks', 'ybe,equivalence', '--n', '2..4'))
        self.assertEqual(len(reports), 9)
        self.assertTrue(all(report['pass'] for report in reports))
        self.assertEqual(set(reports[0]), {'name', 'N', 'max_deviation', 'tolerance', 'pass', 'detail'})

    def test_appendix(self):
        reports = json.loads(run('verify', '--checks', 'appendix', '--n', '2..6'))
        self.assertTrue(all(report['pass'] for report in reports))

    def test_every_check_at_small_n(self):
        reports = json.loads(run('verify', '--n', '3'))
        failed = [report['name'] for report in reports if not report['pass']]
        self.assertEqual(failed, [])

    def test_n_below_two(self):
        with self.assertRaises(CommandError) as caught:
            run('verify', '--checks', 'ybe', '--n', '1..3')
        self.assertEqual(caught.exception.returncode, 2)

    def test_unknown_check(self):
        with self.assertRaises(CommandError) as caught:
            run('verify', '--checks', 'ybe,colour')
        self.assertEqual(caught.exception.returncode, 2)

    def test_failed_check_exits_one(self):
        broken = {'ybe': lambda system, tolerance: [build_report('broken', system.N, 1.0, 1.0)]}
        with mock.patch.dict('cli.suites.CHECKS', broken):
            with self.assertRaises(CommandError) as caught:
                run('verify', '--checks', 'ybe', '--n', '2')
        self.assertEqual(caught.exception.returncode, 1)

    def test_agreement_reads_full_rows_through_ten(self):
        passed = build_report('agreement', 0, 0.0, 1.0)
        with mock.patch('cli.suites.agreement_check', return_value=passed) as check:
            run('verify', '--checks', 'agreement', '--n', '10,11')
        calls = {(call.args[1], call.kwargs['rows'], call.kwargs['prune_charge']) for call in check.call_args_list}
        self.assertEqual(calls, {(10, None, False), (11, (0,), None)})

    def test_output_does_not_depend_on_threads(self):
        args = ('verify', '--checks', 'mu,charge,shift', '--n', '2..7')
        self.assertEqual(run(*args, '--threads', '1'), run(*args, '--threads', '3'))


class InvariantCommandTests(SimpleTestCase):
    def test_both_operators_agree(self):
        data = json.loads(run('invariant', '--braid', '3: 1 -2 1 -2', '--n', '5', '--operator', 'both'))
        self.assertEqual((data['writhe'], data['components']), (0, 1))
        jones, kashaev = complex(*data['jones']['value']), complex(*data['kashaev']['value'])
        self.assertLess(abs(jones - kashaev), 1e-8 * abs(jones))
        self.assertLess(data['difference'], 1e-8 * abs(jones))

    def test_table_knot(self):
        data = json.loads(run('invariant', '--knot', '3_1', '--n', '2', '--operator', 'jones'))
        self.assertEqual(data['operator'], 'jones')
        self.assertAlmostEqual(abs(complex(*data['value'])), 3.0, places=8)

    def test_closed_trace_vanishes(self):
        data = json.loads(run('invariant', '--knot', '4_1', '--n', '3', '--operator', 'both', '--closed-trace'))
        self.assertEqual(set(data['closed_trace']), {'jones', 'kashaev'})
        for value in data['closed_trace'].values():
            self.assertLess(abs(complex(*value)), 1e-8)

    def test_range_gives_list(self):
        data = json.loads(run('invariant', '--knot', 'unknot', '--n', '2..4', '--operator', 'kashaev'))
        self.assertEqual([item['N'] for item in data], [2, 3, 4])

    def test_deterministic_across_threads(self):
        args = ('invariant', '--knot', '5_2', '--n', '4', '--operator', 'both')
        self.assertEqual(run(*args, '--threads', '1'), run(*args, '--threads', '4'))

    def test_bad_braid(self):
        with self.assertRaises(CommandError) as caught:
            run('invariant', '--braid', '2: 3', '--n', '3')
        self.assertEqual(caught.exception.returncode, 2)

    def test_unknown_knot(self):
        with self.assertRaises(CommandError) as caught:
            run('invariant', '--knot', '12n_242', '--n', '3')
        self.assertEqual(caught.exception.returncode, 2)

    def test_scalarness_failure_exits_one(self):
        with mock.patch('cli.management.commands.invariant.one_one_invariant',
                        side_effect=ScalarnessError(1.0, 1e-9)):
            with self.assertRaises(CommandError) as caught:
                run('invariant', '--knot', '4_1', '--n', '3')
        self.assertEqual(caught.exception.returncode, 1)


class DumpCommandTests(SimpleTestCase):
    def test_kashaev_at_two(self):
        data = json.loads(run('dump_rmatrix', '--n', '2', '--kind', 'kashaev'))
        self.assertEqual((data['N'], data['kind'], data['dim']), (2, 'kashaev', 4))
        self.assertEqual(len(data['entries']), 16)

    def test_n_below_two(self):
        with self.assertRaises(CommandError) as caught:
            run('dump_rmatrix', '--n', '1')
        self.assertEqual(caught.exception.returncode, 2)


class RepCheckCommandTests(SimpleTestCase):
    def test_relations_pass(self):
        reports = json.loads(run('rep_check', '--n', '6', '--p', '11/4', '--p', '2'))
        self.assertEqual(len(reports), 5)
        self.assertTrue(all(report['pass'] for report in reports))

    def test_invalid_parameter(self):
        with self.assertRaises(CommandError) as caught:
            run('rep_check', '--n', '5', '--p', '0')
        self.assertEqual(caught.exception.returncode, 2)


class VolumeCommandTests(SimpleTestCase):
    def test_unknot_csv(self):
        lines = run('volume', '--knot', 'unknot', '--n-min', '2', '--n-max', '20', '--format', 'csv').splitlines()
        self.assertEqual(lines[0], 'N,absJ,v_N')
        self.assertEqual(len(lines), 20)
        for line in lines[1:]:
            N, abs_J, v_N = line.split(',')
            self.assertAlmostEqual(float(abs_J), 1.0)
            self.assertAlmostEqual(float(v_N), 0.0)

    def test_json_carries_fit(self):
        data = json.loads(run('volume', '--knot', '4_1', '--n-min', '2', '--n-max', '8', '--fit', 'corrected'))
        self.assertEqual(data['knot'], '4_1')
        self.assertEqual([point['N'] for point in data['points']], list(range(2, 9)))
        self.assertEqual(data['fit']['model'], 'corrected')
        self.assertTrue(data['fit']['heuristic'])
        self.assertEqual(data['report']['knot'], '4_1')
        self.assertEqual(data['entry']['braid'], '3: 1 -2 1 -2')

    def test_too_few_points_for_a_fit(self):
        with self.assertRaises(CommandError) as caught:
            run('volume', '--knot', '4_1', '--n-min', '2', '--n-max', '4')
        self.assertEqual(caught.exception.returncode, 2)

    def test_bad_range(self):
        with self.assertRaises(CommandError) as caught:
            run('volume', '--knot', '4_1', '--n-min', '6', '--n-max', '3')
        self.assertEqual(caught.exception.returncode, 2)
