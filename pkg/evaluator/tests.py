import cmath
import dataclasses

import numpy as np
from django.test import SimpleTestCase
from scipy import sparse

from braids.burau import determinant
from braids.knot_table import load_knot_table, lookup_knot
from braids.words import conjugate, connect_sum, inverse, parse_braid, stabilize
from qarith.exceptions import DomainError, ScalarnessError
from rmatrix.enhanced import enhanced_operator
from rmatrix.operators import Operator

from .invariants import (
    BraidPropagator,
    agreement_check,
    basis_state,
    braid_operator_apply,
    closed_trace_invariant,
    colored_jones,
    kashaev_invariant,
    one_one_invariant,
)

CORPUS = ('3_1', '4_1', '5_2', '6_1', 'granny')


def pochhammer(q, n):
    result = 1
    for k in range(1, n + 1):
        result *= 1 - q ** k
    return result


def trefoil_sum(N):
    q = cmath.exp(2j * cmath.pi / N)
    return sum(pochhammer(q, k) for k in range(N))


def figure_eight_sum(N):
    q = cmath.exp(2j * cmath.pi / N)
    return sum(abs(pochhammer(q, k)) ** 2 for k in range(N))


class PropagationTests(SimpleTestCase):
    def test_empty_word_keeps_state(self):
        operator = enhanced_operator(3, 'kashaev')
        state = np.arange(9, dtype=complex)
        np.testing.assert_array_equal(braid_operator_apply(operator, parse_braid('2:'), state), state)

    def test_single_letter_support(self):
        N = 5
        operator = enhanced_operator(N, 'jones')
        for indices in ((0, 4), (2, 3), (4, 0)):
            result = braid_operator_apply(operator, parse_braid('2: 1'), basis_state(N, indices))
            self.assertLessEqual(np.count_nonzero(result), N)

    def test_word_then_inverse_is_identity(self):
        word = parse_braid('3: 1 -2 1 -2 2')
        round_trip = parse_braid('3: ' + ' '.join(map(str, word.letters + inverse(word).letters)))
        for kind in ('jones', 'kashaev'):
            operator = enhanced_operator(4, kind)
            state = basis_state(4, (1, 3, 2))
            np.testing.assert_allclose(braid_operator_apply(operator, round_trip, state), state, atol=1e-9)

    def test_sparse_state_input(self):
        operator = enhanced_operator(3, 'jones')
        word = parse_braid('2: 1 1')
        state = basis_state(3, (1, 2))
        dense = braid_operator_apply(operator, word, state)
        via_sparse = braid_operator_apply(operator, word, sparse.csr_matrix(state))
        np.testing.assert_allclose(via_sparse.toarray()[0], dense)

    def test_state_shape_is_checked(self):
        with self.assertRaises(DomainError):
            braid_operator_apply(enhanced_operator(3, 'jones'), parse_braid('2: 1'), np.zeros(27))

    def test_backends_agree(self):
        word = parse_braid('3: 1 -2 1 -2')
        for kind in ('jones', 'kashaev'):
            operator = enhanced_operator(4, kind)
            sparse_value = one_one_invariant(operator, word, backend='sparse', prune_charge=False).scalar
            dense_value = one_one_invariant(operator, word, backend='dense', prune_charge=False).scalar
            self.assertAlmostEqual(complex(sparse_value), complex(dense_value), places=9)

    def test_unknown_backend(self):
        with self.assertRaises(DomainError):
            BraidPropagator(enhanced_operator(3, 'jones'), parse_braid('2: 1'), backend='gpu')

    def test_thread_count_does_not_change_result(self):
        word = parse_braid('3: 1 1 1 2 -1 2')
        for kind in ('jones', 'kashaev'):
            operator = enhanced_operator(5, kind)
            single = BraidPropagator(operator, word, batch_size=4, threads=1).endomorphism()
            pooled = BraidPropagator(operator, word, batch_size=4, threads=4).endomorphism()
            np.testing.assert_array_equal(single, pooled)


class InvariantTests(SimpleTestCase):
    def test_unknot_is_one(self):
        for N in range(2, 33):
            kinds = ('jones', 'kashaev') if N <= 12 else ('jones',)
            for kind in kinds:
                self.assertAlmostEqual(complex(one_one_invariant(enhanced_operator(N, kind), parse_braid('1:')).scalar), 1)

    def test_kinked_unknots_are_one(self):
        for text in ('2: 1', '2: -1', '3: 1 -2', '3: -1 -2'):
            for kind in ('jones', 'kashaev'):
                for N in (2, 3, 6):
                    value = one_one_invariant(enhanced_operator(N, kind), parse_braid(text)).scalar
                    self.assertAlmostEqual(complex(value), 1, places=9)

    def test_negative_kinks_at_large_n(self):
        for N in (17, 24, 32):
            for text in ('2: -1', '3: -1 -2'):
                value = one_one_invariant(enhanced_operator(N, 'jones'), parse_braid(text)).scalar
                self.assertAlmostEqual(complex(value), 1, places=6)

    def test_determinant_anchors(self):
        for name in CORPUS:
            word = lookup_knot(name).braid
            self.assertAlmostEqual(abs(colored_jones(word, 2)), determinant(word), places=6)
        self.assertAlmostEqual(abs(colored_jones(parse_braid('2: 1 1 1'), 2)), 3, places=6)
        self.assertAlmostEqual(abs(colored_jones(parse_braid('3: 1 -2 1 -2'), 2)), 5, places=6)

    def test_known_sums(self):
        trefoil, figure_eight = parse_braid('2: 1 1 1'), parse_braid('3: 1 -2 1 -2')
        for N in range(2, 9):
            self.assertAlmostEqual(abs(colored_jones(trefoil, N)), abs(trefoil_sum(N)), places=7)
            value = complex(colored_jones(figure_eight, N))
            self.assertAlmostEqual(abs(value), figure_eight_sum(N), places=7)
            self.assertAlmostEqual(value.imag, 0, places=7)

    def test_value_fields(self):
        value = one_one_invariant(enhanced_operator(3, 'jones'), parse_braid('3: 1 -2 1 -2'))
        self.assertEqual((value.N, value.kind, value.writhe, value.components), (3, 'jones', 0, 1))
        self.assertEqual(value.braid, '3: 1 -2 1 -2')
        self.assertEqual(value.endomorphism.shape, (3, 3))
        self.assertLess(value.scalarness_deviation, 1e-8)

    def test_scalarness_for_both_operators(self):
        for name in CORPUS:
            word = lookup_knot(name).braid
            for kind in ('jones', 'kashaev'):
                value = one_one_invariant(enhanced_operator(4, kind), word, prune_charge=False)
                self.assertLess(value.scalarness_deviation, 1e-8 * max(1.0, abs(value.endomorphism).max()))

    def test_charge_pruning_is_sound(self):
        for N in range(2, 6):
            operator = enhanced_operator(N, 'jones')
            for name in ('4_1', '5_2'):
                word = lookup_knot(name).braid
                pruned = one_one_invariant(operator, word).scalar
                full = one_one_invariant(operator, word, prune_charge=False).scalar
                self.assertAlmostEqual(complex(pruned), complex(full), places=9)

    def test_pruning_needs_conservation(self):
        with self.assertRaises(DomainError):
            one_one_invariant(enhanced_operator(3, 'kashaev'), parse_braid('2: 1 1 1'), prune_charge=True)

    def test_non_scalar_tangle_raises(self):
        operator = enhanced_operator(3, 'jones')
        broken = dataclasses.replace(operator, mu=Operator.identity(3, 1, operator.system.dtype))
        with self.assertRaises(ScalarnessError):
            one_one_invariant(broken, parse_braid('2: 1'), prune_charge=False)

    def test_split_closure_vanishes(self):
        with self.assertLogs('evaluator.invariants', level='WARNING'):
            value = one_one_invariant(enhanced_operator(4, 'kashaev'), parse_braid('2:'))
        self.assertAlmostEqual(complex(value.scalar), 0)
        self.assertEqual(value.components, 2)

    def test_row_probing(self):
        word = lookup_knot('5_2').braid
        operator = enhanced_operator(5, 'kashaev')
        full = one_one_invariant(operator, word).scalar
        probed = one_one_invariant(operator, word, rows=(2,))
        self.assertEqual(probed.rows, (2,))
        self.assertAlmostEqual(complex(probed.scalar), complex(full), places=9)


class ClosedTraceTests(SimpleTestCase):
    def test_closed_trace_vanishes(self):
        for name in ('3_1', '4_1', '5_2'):
            self.assertAlmostEqual(
                complex(closed_trace_invariant(enhanced_operator(3, 'jones'), lookup_knot(name).braid)), 0
            )
        self.assertAlmostEqual(complex(closed_trace_invariant(enhanced_operator(2, 'kashaev'), parse_braid('1:'))), 0)

    def test_trace_of_mu_times_tangle(self):
        word = parse_braid('3: 1 -2 1 -2')
        for kind in ('jones', 'kashaev'):
            operator = enhanced_operator(4, kind)
            tangle = one_one_invariant(operator, word).scalar
            self.assertAlmostEqual(
                complex(operator.mu.trace() * tangle), complex(closed_trace_invariant(operator, word)), places=9
            )


class AgreementTests(SimpleTestCase):
    def test_corpus_agreement(self):
        for entry in load_knot_table():
            for N in range(2, 11):
                values = {
                    kind: one_one_invariant(enhanced_operator(N, kind), entry.braid, prune_charge=False)
                    for kind in ('jones', 'kashaev')
                }
                for kind, value in values.items():
                    with self.subTest(knot=entry.name, N=N, kind=kind):
                        self.assertEqual(value.rows, tuple(range(N)))
                        scale = max(1.0, float(np.abs(value.endomorphism).max()))
                        self.assertLess(value.scalarness_deviation, 1e-7 * scale)
                with self.subTest(knot=entry.name, N=N):
                    self.assertAlmostEqual(complex(values['jones'].scalar), complex(values['kashaev'].scalar),
                                           delta=1e-7 * max(1.0, abs(values['jones'].scalar)))

    def test_unpruned_agreement_check(self):
        report = agreement_check(lookup_knot('5_2').braid, 7, prune_charge=False)
        self.assertTrue(report.passed, report)

    def test_extended_precision_agreement(self):
        report = agreement_check(lookup_knot('4_1').braid, 5, precision='extended')
        self.assertTrue(report.passed, report)

    def test_markov_invariance(self):
        for name in CORPUS:
            word = lookup_knot(name).braid
            variants = (conjugate(word, 1), conjugate(word, -(word.strands - 1)), stabilize(word), stabilize(word, -1))
            for N in range(2, 9):
                expected = colored_jones(word, N, rows=(0,))
                for variant in variants:
                    self.assertAlmostEqual(complex(colored_jones(variant, N, rows=(0,))), complex(expected),
                                           places=6, msg=f'{name} N={N} {variant}')

    def test_figure_eight_conjugate(self):
        first, second = parse_braid('3: 2 1 -2 1 -2 -2'), parse_braid('3: 1 -2 1 -2')
        for N in range(2, 7):
            self.assertAlmostEqual(complex(kashaev_invariant(first, N)), complex(kashaev_invariant(second, N)),
                                   places=8)

    def test_multiplicativity(self):
        trefoil = lookup_knot('3_1').braid
        granny = connect_sum(trefoil, trefoil)
        for N in range(2, 11):
            square = colored_jones(trefoil, N) ** 2
            self.assertLessEqual(abs(colored_jones(granny, N) - square), 1e-7 * abs(square))
