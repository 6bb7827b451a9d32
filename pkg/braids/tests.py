import json
import os
import tempfile

from django.test import SimpleTestCase

from qarith.exceptions import BraidParseError, DomainError, KnotTableError

from .burau import alexander_at, determinant
from .knot_table import load_constants, load_knot_table, lookup_knot
from .serializers import KnotEntryOutputSerializer, KnotEntrySerializer
from .words import (
    BraidWord,
    closure_components,
    conjugate,
    connect_sum,
    format_braid,
    inverse,
    parse_braid,
    stabilize,
    writhe,
)

TREFOIL = '2: 1 1 1'
FIGURE_EIGHT = '3: 1 -2 1 -2'


class ParseTests(SimpleTestCase):
    def test_examples(self):
        trefoil = parse_braid(TREFOIL)
        self.assertEqual((trefoil.strands, trefoil.letters), (2, (1, 1, 1)))
        self.assertEqual(parse_braid(FIGURE_EIGHT).letters, (1, -2, 1, -2))
        self.assertEqual(parse_braid('1:'), BraidWord(1))

    def test_whitespace_normalizes(self):
        self.assertEqual(format_braid(parse_braid('  3 :1   -2\t1 -2 ')), FIGURE_EIGHT)
        self.assertEqual(format_braid(parse_braid('1:')), '1:')
        self.assertEqual(str(parse_braid(TREFOIL)), TREFOIL)

    def test_errors_carry_position(self):
        cases = {
            '1 1 1': 0,
            'x: 1': 0,
            '0:': 0,
            '2: 1 0': 2,
            '2: 1 2': 2,
            '3: 1 -3': 2,
            '3: 1 a': 2,
        }
        for text, position in cases.items():
            with self.assertRaises(BraidParseError) as caught:
                parse_braid(text)
            self.assertEqual(caught.exception.position, position, text)

    def test_parse_error_is_a_domain_error(self):
        with self.assertRaises(DomainError):
            parse_braid('2: 5')

    def test_direct_construction_is_validated(self):
        with self.assertRaises(DomainError):
            BraidWord(2, (2,))
        with self.assertRaises(DomainError):
            BraidWord(0)


class WordTests(SimpleTestCase):
    def test_writhe(self):
        self.assertEqual(writhe(parse_braid('2: 1 1 1')), 3)
        self.assertEqual(writhe(parse_braid(FIGURE_EIGHT)), 0)
        self.assertEqual(writhe(parse_braid('4:')), 0)

    def test_components(self):
        self.assertEqual(closure_components(parse_braid(TREFOIL)), 1)
        self.assertEqual(closure_components(parse_braid(FIGURE_EIGHT)), 1)
        self.assertEqual(closure_components(parse_braid('2:')), 2)
        self.assertEqual(closure_components(parse_braid('2: 1 1')), 2)
        self.assertEqual(closure_components(parse_braid('1:')), 1)

    def test_connect_sum(self):
        trefoil = parse_braid(TREFOIL)
        granny = connect_sum(trefoil, trefoil)
        self.assertEqual(format_braid(granny), '3: 1 1 1 2 2 2')
        self.assertEqual(closure_components(granny), 1)
        self.assertEqual(writhe(granny), 2 * writhe(trefoil))
        mixed = connect_sum(parse_braid(FIGURE_EIGHT), parse_braid('2: -1 -1 -1'))
        self.assertEqual(format_braid(mixed), '4: 1 -2 1 -2 -3 -3 -3')
        self.assertEqual(connect_sum(trefoil, BraidWord(1)), trefoil)

    def test_connect_sum_needs_knots(self):
        with self.assertRaises(DomainError):
            connect_sum(parse_braid('2:'), parse_braid(TREFOIL))

    def test_markov_moves(self):
        word = parse_braid(FIGURE_EIGHT)
        self.assertEqual(format_braid(conjugate(word, 2)), '3: 2 1 -2 1 -2 -2')
        self.assertEqual(format_braid(stabilize(word, -1)), '4: 1 -2 1 -2 -3')
        self.assertEqual(format_braid(inverse(word)), '3: 2 -1 2 -1')
        for moved in (conjugate(word, -1), stabilize(word), stabilize(word, -1)):
            self.assertEqual(closure_components(moved), 1)
        with self.assertRaises(DomainError):
            stabilize(word, 2)


class DeterminantTests(SimpleTestCase):
    def test_corpus_determinants(self):
        words = {
            '1:': 1,
            TREFOIL: 3,
            FIGURE_EIGHT: 5,
            '2: 1 1 1 1 1': 5,
            '3: 1 1 1 2 -1 2': 7,
            '4: 1 1 2 -1 -3 2 -3': 9,
            '3: 1 1 1 2 2 2': 9,
        }
        for text, expected in words.items():
            self.assertEqual(determinant(parse_braid(text)), expected, text)

    def test_invariant_under_markov_moves(self):
        word = parse_braid('3: 1 1 1 2 -1 2')
        for moved in (conjugate(word, 1), stabilize(word), stabilize(word, -1), inverse(word)):
            self.assertEqual(determinant(moved), 7)

    def test_trefoil_alexander_polynomial(self):
        # t^-1 - 1 + t up to a unit t^k
        value = alexander_at(parse_braid('3: 1 1 1 2'), 2.0)
        self.assertIn(round(abs(value), 9), (1.5, 3.0, 0.75))


class KnotTableTests(SimpleTestCase):
    def test_bundled_table(self):
        entries = {entry.name: entry for entry in load_knot_table()}
        for name in ('unknot', '3_1', '4_1', '5_1', '5_2', '6_1', 'granny'):
            self.assertIn(name, entries)
        self.assertAlmostEqual(entries['4_1'].reference_volume, 2.029883, places=6)
        self.assertEqual(entries['3_1'].reference_volume, 0)
        self.assertEqual(entries['granny'].summands, ('3_1', '3_1'))
        self.assertEqual(entries['4_1'].braid, parse_braid(FIGURE_EIGHT))

    def test_lookup(self):
        self.assertEqual(lookup_knot('3_1').reference_determinant, 3)
        with self.assertRaises(DomainError):
            lookup_knot('10_161')

    def test_constants(self):
        self.assertAlmostEqual(load_constants()['v3'], 1.0149416, places=7)

    def _write_table(self, rows):
        handle, path = tempfile.mkstemp(suffix='.json')
        with os.fdopen(handle, 'w') as stream:
            json.dump(rows, stream)
        self.addCleanup(os.remove, path)
        return path

    def test_invalid_entries_are_listed(self):
        path = self._write_table([
            {'name': 'hopf', 'strands': 2, 'word': [1, 1], 'reference_volume': None,
             'reference_determinant': None, 'source': 'test'},
            {'name': 'bad_det', 'strands': 2, 'word': [1, 1, 1], 'reference_volume': 0.0,
             'reference_determinant': 4, 'source': 'test'},
            {'name': 'bounds', 'strands': 2, 'word': [3], 'reference_volume': None,
             'reference_determinant': None, 'source': 'test'},
            {'name': 'fine', 'strands': 1, 'word': [], 'reference_volume': 0.0,
             'reference_determinant': 1, 'source': 'test'},
        ])
        with self.assertRaises(KnotTableError) as caught:
            load_knot_table(path)
        self.assertEqual(set(caught.exception.errors), {'hopf', 'bad_det', 'bounds'})

    def test_unknown_summand_and_duplicates(self):
        row = {'name': 'k', 'strands': 1, 'word': [], 'reference_volume': None,
               'reference_determinant': None, 'source': 'test', 'summands': ['missing']}
        path = self._write_table([row, dict(row, summands=[])])
        with self.assertRaises(KnotTableError) as caught:
            load_knot_table(path)
        self.assertIn('k', caught.exception.errors)

    def test_unreadable_table(self):
        with self.assertRaises(KnotTableError):
            load_knot_table('/nonexistent/knots.json')

    def test_serializers(self):
        serializer = KnotEntrySerializer(data={
            'name': '3_1', 'strands': 2, 'word': [1, 1, 1], 'reference_volume': 0.0,
            'reference_determinant': 3, 'source': 'test',
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        entry = serializer.save()
        data = KnotEntryOutputSerializer(entry).data
        self.assertEqual(data['braid'], TREFOIL)
        self.assertEqual(data['summands'], [])
