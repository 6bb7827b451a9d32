"""
Linear maps on tensor powers of C^N.
"""

import itertools

import numpy as np
from scipy import sparse

from qarith.exceptions import DomainError


def flatten_index(indices, N):
    """Row-major flattening: (i1, ..., ik) -> i1 N^(k-1) + ... + ik"""
    flat = 0
    for index in indices:
        flat = flat * N + index
    return flat


def unflatten_index(flat, N, arity):
    digits = []
    for _ in range(arity):
        flat, digit = divmod(flat, N)
        digits.append(digit)
    return tuple(reversed(digits))


class Operator:
    """
    A linear map f on (C^N)^{tensor k}, with

        f(v_{i1} x ... x v_{ik}) = sum f_{i1..ik}^{j1..jk} v_{j1} x ... x v_{jk}.

    Lower (input) indices flatten to the CSR row and upper (output) indices
    to the column, so a row vector of input coordinates maps to output
    coordinates by right multiplication. The product of a written sequence
    of maps is the matrix product in the same order: the leftmost factor
    acts first. Instances are immutable.
    """

    def __init__(self, matrix, N, arity, label=''):
        matrix = sparse.csr_matrix(matrix)
        side = N ** arity
        if matrix.shape != (side, side):
            raise DomainError(f"Operator on (C^{N})^{arity} needs shape {(side, side)}, got {matrix.shape}")
        matrix.sum_duplicates()
        self.matrix = matrix
        self.N = N
        self.arity = arity
        self.label = label

    def __repr__(self):
        return f"Operator({self.label or 'unnamed'}, N={self.N}, arity={self.arity}, nnz={self.nnz})"

    @classmethod
    def identity(cls, N, arity, dtype, label='id'):
        return cls(sparse.identity(N ** arity, dtype=dtype, format='csr'), N, arity, label)

    @classmethod
    def from_entries(cls, N, arity, rows, cols, values, dtype, label=''):
        """Build from flattened (input row, output column, value) triples"""
        side = N ** arity
        values = np.asarray(values, dtype=dtype)
        matrix = sparse.coo_matrix((values, (np.asarray(rows), np.asarray(cols))), shape=(side, side), dtype=dtype)
        return cls(matrix.tocsr(), N, arity, label)

    @classmethod
    def from_dense(cls, dense, N, arity, drop=0.0, label=''):
        """Sparsify a dense matrix, dropping entries at or below drop * max|entry|"""
        dense = np.asarray(dense)
        magnitude = np.abs(dense)
        threshold = drop * magnitude.max() if dense.size else 0.0
        kept = np.where(magnitude > threshold, dense, 0)
        return cls(sparse.csr_matrix(kept), N, arity, label)

    @property
    def dim(self):
        return self.N ** self.arity

    @property
    def dtype(self):
        return self.matrix.dtype

    @property
    def nnz(self):
        return self.matrix.nnz

    def dense(self):
        return self.matrix.toarray()

    def entry(self, lower, upper):
        """f_{lower}^{upper} for multi-index tuples"""
        return self.matrix[flatten_index(lower, self.N), flatten_index(upper, self.N)]

    def entries(self):
        """Nonzero entries as {(lower multi-index, upper multi-index): value}"""
        coo = self.matrix.tocoo()
        return {
            (unflatten_index(row, self.N, self.arity), unflatten_index(col, self.N, self.arity)): value
            for row, col, value in zip(coo.row, coo.col, coo.data)
        }

    def dense_entries(self):
        """Every entry in (output row, input column) row-major order"""
        dense = self.dense().T
        for row, col in itertools.product(range(self.dim), repeat=2):
            yield row, col, dense[row, col]

    def _same_space(self, other):
        if other.N != self.N or other.arity != self.arity:
            raise DomainError(f"Cannot combine {self!r} with {other!r}")

    def then(self, *others):
        """The map 'others[-1] after ... after others[0] after self'"""
        matrix = self.matrix
        for other in others:
            self._same_space(other)
            matrix = matrix @ other.matrix
        return Operator(matrix, self.N, self.arity)

    def tensor(self, other):
        if other.N != self.N:
            raise DomainError('Tensor factors must share N')
        return Operator(sparse.kron(self.matrix, other.matrix, format='csr'), self.N, self.arity + other.arity)

    def pad(self, left, right):
        """id^{left} x self x id^{right}"""
        dtype = self.dtype
        matrix = sparse.kron(sparse.identity(self.N ** left, dtype=dtype), self.matrix, format='csr')
        matrix = sparse.kron(matrix, sparse.identity(self.N ** right, dtype=dtype), format='csr')
        return Operator(matrix, self.N, self.arity + left + right)

    def scaled(self, factor):
        return Operator(self.matrix * factor, self.N, self.arity, self.label)

    def transpose(self):
        return Operator(self.matrix.transpose().tocsr(), self.N, self.arity)

    def plus(self, other, factor=1):
        self._same_space(other)
        return Operator(self.matrix + other.matrix * factor, self.N, self.arity)

    def partial_trace(self):
        """Sp: contract the last input index with the last output index"""
        if self.arity == 0:
            raise DomainError('Nothing left to trace')
        N = self.N
        coo = self.matrix.tocoo()
        keep = (coo.row % N) == (coo.col % N)
        side = N ** (self.arity - 1)
        traced = sparse.coo_matrix(
            (coo.data[keep], (coo.row[keep] // N, coo.col[keep] // N)), shape=(side, side), dtype=self.dtype
        )
        return Operator(traced.tocsr(), N, self.arity - 1)

    def trace(self):
        return self.matrix.diagonal().sum()

    def max_abs(self):
        data = self.matrix.data
        return float(np.max(np.abs(data))) if data.size else 0.0

    def max_deviation(self, other):
        self._same_space(other)
        difference = (self.matrix - other.matrix).tocsr()
        return float(np.max(np.abs(difference.data))) if difference.nnz else 0.0


def compose(first, *rest):
    """Written-order product: first acts first"""
    return first.then(*rest)
