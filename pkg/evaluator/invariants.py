"""
(1,1)-tangle invariants of braid closures by state propagation.

For each input index i of the open first strand and each basis assignment
J of strands 2..n, the state e_i x (mu^{x(n-1)} e_J) is pushed through the
braid letter by letter; the coefficient at (i', J) feeds entry (i, i') of
the N x N tangle endomorphism, which is the iterated operator trace over
strands n, ..., 2.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from django.conf import settings
from scipy import sparse

from braids.words import closure_components, format_braid, writhe
from qarith.exceptions import DomainError, ScalarnessError
from qarith.reports import compare, default_tolerance, max_abs, tolerance_for
from rmatrix.enhanced import enhanced_operator

logger = logging.getLogger(__name__)

BACKENDS = ('sparse', 'dense')


@dataclass(frozen=True)
class TangleValue:
    """Normalized T_{S,1} of a braid word with the raw endomorphism it came from"""
    scalar: complex
    scalarness_deviation: float
    N: int
    kind: str
    braid: str
    writhe: int
    components: int
    endomorphism: np.ndarray = field(repr=False, compare=False)
    rows: Tuple[int, ...] = ()


def _tail_power(mu, count):
    matrix = sparse.identity(1, dtype=mu.dtype, format='csr')
    for _ in range(count):
        matrix = sparse.kron(matrix, mu.matrix, format='csr')
    return matrix


class BraidPropagator:
    """
    Pushes batches of row-vector states on (C^N)^{x n} through a braid word.

    The sparse backend multiplies CSR states by padded CSR letters and
    keeps a charge-conserving operator inside one charge sector for free.
    The dense backend contracts the reshaped R tensor into the two strand
    axes a letter touches, which is faster for operators with dense R.
    """

    def __init__(self, operator, word, backend=None, batch_size=None, threads=None):
        backend = backend or ('sparse' if operator.conserves_charge else 'dense')
        if backend not in BACKENDS:
            raise DomainError(f"Unknown propagation backend {backend!r}; choose from {BACKENDS}")
        self.operator = operator
        self.word = word
        self.backend = backend
        self.N = operator.N
        self.strands = word.strands
        self.dim = self.N ** self.strands
        self.threads = threads or settings.QJK_THREADS
        batch_size = batch_size or settings.QJK_BATCH_SIZE
        if backend == 'dense':
            batch_size = min(batch_size, max(1, settings.QJK_DENSE_MAX_ELEMENTS // self.dim))
        self.batch_size = batch_size
        self._letters = {}
        for letter in set(word.letters):
            if backend == 'sparse':
                self._sparse_letter(letter)
            else:
                self._dense_letter(letter)
        self._mu_tail = _tail_power(operator.mu, self.strands - 1)

    def _sparse_letter(self, letter):
        if letter not in self._letters:
            N, position = self.N, abs(letter) - 1
            dtype = self.operator.system.dtype
            left = sparse.identity(N ** position, dtype=dtype, format='csr')
            right = sparse.identity(N ** (self.strands - position - 2), dtype=dtype, format='csr')
            matrix = sparse.kron(sparse.kron(left, self.operator.letter_matrix(letter), format='csr'), right,
                                 format='csr')
            self._letters[letter] = matrix
        return self._letters[letter]

    def _dense_letter(self, letter):
        key = 1 if letter > 0 else -1
        if key not in self._letters:
            N = self.N
            self._letters[key] = self.operator.letter_matrix(key).toarray().reshape(N, N, N, N)
        return self._letters[key]

    def apply(self, states):
        """
        Propagate a (batch, N^n) array or sparse matrix of row states through
        every letter in word order; the result has the input's kind.
        """
        if self.backend == 'sparse':
            result = sparse.csr_matrix(states)
            for letter in self.word.letters:
                result = result @ self._sparse_letter(letter)
            return result if sparse.issparse(states) else result.toarray()

        dense = states.toarray() if sparse.issparse(states) else np.asarray(states)
        batch = dense.shape[0]
        tensor = dense.reshape((batch,) + (self.N,) * self.strands)
        for letter in self.word.letters:
            axis = abs(letter)
            tensor = np.tensordot(tensor, self._dense_letter(letter), axes=([axis, axis + 1], [0, 1]))
            tensor = np.moveaxis(tensor, [-2, -1], [axis, axis + 1])
        result = tensor.reshape(batch, self.dim)
        return sparse.csr_matrix(result) if sparse.issparse(states) else result

    def initial_states(self, row, tails):
        """Rows e_row x (mu^{x(n-1)} e_J) for the given tail indices J"""
        N = self.N
        dtype = self.operator.system.dtype
        first = sparse.csr_matrix(([1], ([0], [row])), shape=(1, N), dtype=dtype)
        return sparse.kron(first, self._mu_tail[tails], format='csr')

    def endomorphism_row(self, row, tails, diagonal_only=False):
        """Contribution of the tails J to row `row` of the tangle endomorphism"""
        N = self.N
        tail_dim = N ** (self.strands - 1)
        states = self.initial_states(row, tails)
        if self.backend == 'dense':
            states = states.toarray()
        final = self.apply(states)

        outputs = np.array([row]) if diagonal_only else np.arange(N)
        batch = len(tails)
        rows = np.repeat(np.arange(batch), len(outputs))
        cols = (np.tile(outputs, batch) * tail_dim) + np.repeat(tails, len(outputs))
        if sparse.issparse(final):
            picked = np.asarray(final[rows, cols]).ravel()
        else:
            picked = final[rows, cols]
        values = np.zeros(N, dtype=self.operator.system.dtype)
        values[outputs] = picked.reshape(batch, len(outputs)).sum(axis=0)
        return values

    def endomorphism(self, rows=None, diagonal_only=False):
        """
        The tangle endomorphism before normalization, restricted to the
        requested input rows. Chunks run on a thread pool and are reduced
        in a fixed order, so the result does not depend on the worker count.
        """
        N = self.N
        rows = tuple(range(N)) if rows is None else tuple(rows)
        tail_dim = N ** (self.strands - 1)
        tasks = [
            (row, np.arange(start, min(start + self.batch_size, tail_dim)))
            for row in rows
            for start in range(0, tail_dim, self.batch_size)
        ]
        matrix = np.zeros((N, N), dtype=self.operator.system.dtype)

        def run(task):
            return self.endomorphism_row(task[0], task[1], diagonal_only)

        if self.threads > 1 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                partials = list(executor.map(run, tasks))
        else:
            partials = [run(task) for task in tasks]
        for (row, _), partial in zip(tasks, partials):
            matrix[row] += partial
        return matrix


def braid_operator_apply(operator, word, state, backend=None):
    """Push one state vector (dense or sparse) on (C^N)^{x n} through the braid word"""
    propagator = BraidPropagator(operator, word, backend=backend)
    if sparse.issparse(state):
        if state.shape[1] != propagator.dim:
            raise DomainError(f"State of length {state.shape[1]} does not live on {word.strands} strands")
        return propagator.apply(sparse.csr_matrix(state))
    state = np.asarray(state)
    if state.shape != (propagator.dim,):
        raise DomainError(f"State of shape {state.shape} does not live on {word.strands} strands")
    return propagator.apply(state.reshape(1, -1))[0]


def basis_state(N, indices, dtype=np.complex128):
    """The basis vector e_{i1} x ... x e_{in} as a dense array"""
    state = np.zeros(N ** len(indices), dtype=dtype)
    flat = 0
    for index in indices:
        flat = flat * N + index
    state[flat] = 1
    return state


def scalarness(matrix, rows):
    """(scalar, deviation): mean of the probed diagonal and the worst departure from scalar"""
    rows = list(rows)
    diagonal = matrix[rows, rows]
    scalar = diagonal.mean()
    off = matrix[rows].copy()
    off[np.arange(len(rows)), rows] = 0
    deviation = max(max_abs(off), max_abs(diagonal - scalar))
    return scalar, deviation


def normalization(operator, word):
    """alpha^-w beta^-n"""
    return operator.alpha ** (-writhe(word)) * operator.beta ** (-word.strands)


def one_one_invariant(operator, word, rows=None, backend=None, threads=None, batch_size=None,
                      prune_charge=None, tolerance=None):
    """
    T_{S,1} of the closure of `word`. Raises ScalarnessError if the tangle
    endomorphism is not a multiple of the identity. `rows` restricts the
    evaluation to some input indices; the scalarness check then covers
    only those rows. Charge pruning reads only the diagonal and is the
    default for charge-conserving operators.
    """
    components = closure_components(word)
    if components > 1:
        logger.warning("Braid '%s' closes to a %d-component link; the (1,1)-tangle value of a "
                       "split closure vanishes", format_braid(word), components)
    prune = operator.conserves_charge if prune_charge is None else prune_charge
    if prune and not operator.conserves_charge:
        raise DomainError(f"Charge pruning needs a charge-conserving operator, not {operator.kind}")

    logger.info("Evaluating %s invariant of '%s' at N=%d", operator.kind, format_braid(word), operator.N)
    propagator = BraidPropagator(operator, word, backend=backend, batch_size=batch_size, threads=threads)
    probed = tuple(range(operator.N)) if rows is None else tuple(rows)
    matrix = propagator.endomorphism(probed, diagonal_only=prune)
    scalar, deviation = scalarness(matrix, probed)
    limit = tolerance_for(max_abs(matrix[list(probed)]), operator.N, tolerance)
    if deviation > limit:
        raise ScalarnessError(deviation, limit)

    value = normalization(operator, word) * scalar
    logger.info("%s invariant of '%s' at N=%d: %s (scalarness %.3e)",
                operator.kind, format_braid(word), operator.N, value, deviation)
    return TangleValue(
        scalar=value,
        scalarness_deviation=deviation,
        N=operator.N,
        kind=operator.kind,
        braid=format_braid(word),
        writhe=writhe(word),
        components=components,
        endomorphism=matrix,
        rows=probed,
    )


def closed_trace_invariant(operator, word, backend=None, threads=None):
    """T_S, the fully closed trace alpha^-w beta^-n Tr(b(word)(mu x ... x mu))"""
    propagator = BraidPropagator(operator, word, backend=backend, threads=threads)
    matrix = propagator.endomorphism()
    closed = np.trace(matrix @ operator.mu.dense())
    return normalization(operator, word) * closed


def agreement_check(word, N, precision=None, rows=None, tolerance=None, threads=None, prune_charge=None):
    """
    T_{S_J,1} against T_{S_K,1}; complex equality, phase included. Both
    endomorphisms are checked for scalarness on the probed rows first.
    """
    jones = one_one_invariant(enhanced_operator(N, 'jones', precision), word, rows=rows, threads=threads,
                              prune_charge=prune_charge, tolerance=tolerance)
    kashaev = one_one_invariant(enhanced_operator(N, 'kashaev', precision), word, rows=rows, threads=threads,
                                tolerance=tolerance)
    return compare('agreement', N, [jones.scalar], [kashaev.scalar], tolerance=tolerance,
                   detail=format_braid(word))


def colored_jones(word, N, precision=None, rows=None, threads=None):
    """J_N of the closure, through S_J"""
    return one_one_invariant(enhanced_operator(N, 'jones', precision), word, rows=rows, threads=threads).scalar


def kashaev_invariant(word, N, precision=None, rows=None, threads=None):
    """<L>_N of the closure, through S_K"""
    return one_one_invariant(enhanced_operator(N, 'kashaev', precision), word, rows=rows, threads=threads).scalar


def zero_limit(tolerance=None):
    """Magnitude under which an invariant value counts as zero"""
    return 100 * default_tolerance(tolerance)
