"""
Enhanced Yang-Baxter operators (R, mu, alpha, beta) with axioms checked at
construction.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qarith.exceptions import AxiomViolation
from qarith.reports import build_report
from qarith.roots import RootSystem, resolve_precision

from .matrices import _check_kind, build_mu, build_R_jones, build_R_kashaev, conjugate_gauge, gauge_constant, twist_scalar
from .operators import Operator, compose

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnhancedYB:
    """
    Quadruple (R, mu, alpha, beta) for one N. conserves_charge marks an R
    whose entries vanish unless input and output index sums agree, which
    lets the evaluator prune to one charge sector.
    """
    system: RootSystem
    kind: str
    R: Operator
    R_inverse: Operator
    mu: Operator
    alpha: complex
    beta: complex
    conserves_charge: bool

    @property
    def N(self):
        return self.system.N

    def letter_matrix(self, sign):
        return self.R.matrix if sign > 0 else self.R_inverse.matrix


def jones_inverse(R):
    """
    R_J^-1 = P conj(R_J) P, with P the flip v_i x v_j -> v_j x v_i.
    Entries are real polynomials in s, so conjugation is s -> s^-1.
    """
    N = R.N
    coo = R.matrix.tocoo()
    rows = (coo.row % N) * N + coo.row // N
    cols = (coo.col % N) * N + coo.col // N
    return Operator.from_entries(N, 2, rows, cols, np.conj(coo.data), R.dtype, label=f"{R.label}^-1")


def kashaev_inverse(system, inverse):
    """R_K^-1 = s^((N+1)(N-3)/2) * conjugate_gauge(R_J^-1)"""
    return conjugate_gauge(system, inverse).scaled(1 / gauge_constant(system))


def axiom_reports(operator, tolerance=None):
    """The enhancement axioms of one quadruple, as deviation reports"""
    N = operator.N
    system = operator.system
    identity = Operator.identity(N, 2, system.dtype)
    identity_one = Operator.identity(N, 1, system.dtype)
    mu_pair = operator.mu.tensor(operator.mu)
    twisted = identity_one.tensor(operator.mu)
    reports = []

    product = compose(operator.R, operator.R_inverse)
    reports.append(build_report(
        f'{operator.kind}:inverse', N, product.max_deviation(identity),
        max(operator.R.max_abs(), operator.R_inverse.max_abs()), N * N, tolerance,
    ))

    left, right = compose(mu_pair, operator.R), compose(operator.R, mu_pair)
    reports.append(build_report(
        f'{operator.kind}:mu-commutation', N, left.max_deviation(right), left.max_abs(), N * N, tolerance,
    ))

    for sign, matrix in ((1, operator.R), (-1, operator.R_inverse)):
        traced = compose(matrix, twisted).partial_trace()
        expected = identity_one.scaled(operator.alpha ** sign * operator.beta)
        reports.append(build_report(
            f'{operator.kind}:twist{"+" if sign > 0 else "-"}', N, traced.max_deviation(expected),
            traced.max_abs(), N, tolerance,
        ))
    return reports


def make_enhanced(system, kind, tolerance=None, verify=True):
    """
    Build S_J = (R_J, mu_J, s^((N^2-1)/2), 1) or S_K = (R_K, mu_K, -s, 1).
    Every axiom is checked unless verify is False; a failure raises
    AxiomViolation naming the axiom.
    """
    _check_kind(kind)
    jones = build_R_jones(system)
    inverse = jones_inverse(jones)
    if kind == 'jones':
        R, R_inverse, conserves = jones, inverse, True
    else:
        R, R_inverse, conserves = build_R_kashaev(system), kashaev_inverse(system, inverse), False

    operator = EnhancedYB(
        system=system,
        kind=kind,
        R=R,
        R_inverse=R_inverse,
        mu=build_mu(system, kind),
        alpha=twist_scalar(system, kind),
        beta=system.one,
        conserves_charge=conserves,
    )
    if verify:
        for report in axiom_reports(operator, tolerance):
            if not report.passed:
                raise AxiomViolation(report.name, report.max_deviation, report.tolerance)
    logger.info("Enhanced operator %s ready for N=%d at %s precision", kind, system.N, system.precision)
    return operator


def enhanced_operator(N, kind, precision=None):
    """make_enhanced, cached per (N, kind, precision)"""
    return _cached_operator(N, kind, resolve_precision(precision))


@lru_cache(maxsize=32)
def _cached_operator(N, kind, precision):
    return make_enhanced(RootSystem(N, precision), kind)
