"""
The N-dimensional representations E and F(p) of the quantum group, given
as operator triples (X, Y, K), with the checks of their defining relations
and of the Cartan automorphism that carries F((N-1)/2) onto E.

Relations are stated for maps: KX means "X, then K", which in the
written order of rmatrix.operators is compose(X, K).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from qarith.exceptions import DomainError
from qarith.reports import default_tolerance, merge
from qarith.roots import qint
from rmatrix.checks import operator_report
from rmatrix.operators import Operator, compose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RepTriple:
    X: Operator
    Y: Operator
    K: Operator
    label: str
    p: Optional[float] = None

    @property
    def N(self):
        return self.K.N


def _diagonal(system, values, label):
    indices = np.arange(system.N)
    return Operator.from_entries(system.N, 1, indices, indices, values, system.dtype, label=label)


def _step(system, values, up, label):
    """Operator sending basis vector i to values[i] times basis vector i +- 1"""
    N = system.N
    values = np.asarray(values, dtype=system.dtype)
    sources = np.arange(N - 1) if up else np.arange(1, N)
    targets = sources + 1 if up else sources - 1
    return Operator.from_entries(N, 1, sources, targets, values[sources], system.dtype, label=label)


def build_E(system):
    """X e_i = [i+1] e_(i+1), Y e_i = [i] e_(i-1), K e_i = s^(i-(N-1)/2) e_i"""
    N = system.N
    indices = np.arange(N)
    raising = [qint(system, i + 1) for i in range(N)]
    lowering = [qint(system, i) for i in range(N)]
    return RepTriple(
        X=_step(system, raising, up=True, label='X_E'),
        Y=_step(system, lowering, up=False, label='Y_E'),
        K=_diagonal(system, system.half_power(2 * indices - N + 1), 'K_E'),
        label='E',
    )


def _qint_at(system, value):
    value = Fraction(value).limit_denominator(10 ** 9)
    if value.denominator == 1:
        return qint(system, int(value))
    return qint(system, float(value))


def _root(system, first, second, p, tolerance):
    """Principal square root of the real product [first][second]"""
    radicand = complex(_qint_at(system, first) * _qint_at(system, second)).real
    if radicand < -tolerance:
        raise DomainError(f"F(p) at p={p} needs sqrt([{first}][{second}]) of a negative number ({radicand:.3e})")
    return system.cast(np.sqrt(max(radicand, 0.0)))


def build_F(system, p, tolerance=None):
    """
    X f_i = sqrt([2p-i+1][i]) f_(i-1), Y f_i = sqrt([2p-i][i+1]) f_(i+1),
    K f_i = s^(p-i) f_i, for a real p keeping every radicand nonnegative.
    """
    N = system.N
    limit = default_tolerance(tolerance)
    p = Fraction(p).limit_denominator(10 ** 9)
    lowering = [_root(system, 2 * p - i + 1, i, p, limit) for i in range(N)]
    raising = [_root(system, 2 * p - i, i + 1, p, limit) for i in range(N)]
    weights = np.array([system.real_power(float(p - i)) for i in range(N)], dtype=system.dtype)
    logger.debug("Built F(%s) for N=%d", p, N)
    return RepTriple(
        X=_step(system, lowering, up=False, label='X_F'),
        Y=_step(system, raising, up=True, label='Y_F'),
        K=_diagonal(system, weights, 'K_F'),
        label='F',
        p=float(p),
    )


def cartan_transform(triple):
    """X <-> Y, K -> K^-1. K is unitary diagonal, so its inverse is its conjugate."""
    K = triple.K
    inverse = Operator(K.matrix.conj(), K.N, 1, label=f'{K.label}^-1')
    return RepTriple(X=triple.Y, Y=triple.X, K=inverse, label=f'cartan({triple.label})', p=triple.p)


def relations_check(system, triple, tolerance=None):
    """KX = sXK, KY = s^-1 YK and XY - YX = (K^2 - K^-2)/(s - s^-1)"""
    X, Y, K = triple.X, triple.Y, triple.K
    K_inverse = Operator(K.matrix.conj(), K.N, 1)
    name = triple.label
    commutator = compose(Y, X).plus(compose(X, Y), factor=-1)
    cartan = compose(K, K).plus(compose(K_inverse, K_inverse), factor=-1).scaled(1 / system.s_diff)
    return merge(f'relations:{name}', system.N, [
        operator_report(f'{name}:KX', compose(X, K), compose(K, X).scaled(system.s), tolerance),
        operator_report(f'{name}:KY', compose(Y, K), compose(K, Y).scaled(1 / system.s), tolerance),
        operator_report(f'{name}:XY', commutator, cartan, tolerance),
    ])


def cartan_check(system, tolerance=None):
    """The Cartan transform of F((N-1)/2) against E, entrywise"""
    image = cartan_transform(build_F(system, Fraction(system.N - 1, 2)))
    return compare_triples(system, image, build_E(system), 'cartan', tolerance)


def compare_triples(system, first, second, name, tolerance=None):
    return merge(name, system.N, [
        operator_report(f'{name}:{part}', getattr(first, part), getattr(second, part), tolerance)
        for part in ('X', 'Y', 'K')
    ])


def representation_reports(system, tolerance=None):
    """Everything rep_check prints for one N"""
    return [
        relations_check(system, build_E(system), tolerance),
        relations_check(system, build_F(system, Fraction(system.N - 1, 2)), tolerance),
        cartan_check(system, tolerance),
    ]
