"""
Identity checks on the R-matrices. Every function returns DeviationReport
objects and never raises on a failed identity; callers decide what a
failure means.
"""

import itertools
import logging

import numpy as np

from qarith.reports import build_report, compare, merge
from qarith.sums import sine_product_check

from .enhanced import jones_inverse, kashaev_inverse
from .matrices import (
    build_D,
    build_mu,
    build_R_jones,
    build_R_kashaev,
    build_W,
    closed_form_tilde,
    conjugate_gauge,
    gauge_constant,
    lam,
    ordering_case,
    rho,
    shift_operator,
    twist_scalar,
)
from .operators import Operator, compose

logger = logging.getLogger(__name__)

# Direct dense inversion is only used as a cross-check up to this N
DIRECT_INVERSE_MAX_N = 12


def operator_report(name, actual, expected, tolerance=None, detail=''):
    """Entrywise comparison of two operators on the same space"""
    scale = max(actual.max_abs(), expected.max_abs())
    return build_report(name, actual.N, actual.max_deviation(expected), scale, actual.dim, tolerance, detail)


def triple_products(R):
    """(R x id)(id x R)(R x id) and (id x R)(R x id)(id x R) on three strands"""
    first, second = R.pad(0, 1), R.pad(1, 0)
    return compose(first, second, first), compose(second, first, second)


def check_ybe(R, tolerance=None):
    left, right = triple_products(R)
    return operator_report(f'ybe:{R.label or "R"}', left, right, tolerance)


def check_gauge_through(system, R_jones=None, tolerance=None):
    """
    (id x D) R_J (id x D^-1) = (D^-1 x id) R_J (D x id), and the
    equivalent commutation of R_J with D x D.
    """
    R = R_jones or build_R_jones(system)
    N = system.N
    identity = Operator.identity(N, 1, system.dtype)
    D, D_inverse = build_D(system), build_D(system, -1)
    through_right = compose(identity.tensor(D_inverse), R, identity.tensor(D))
    through_left = compose(D.tensor(identity), R, D_inverse.tensor(identity))
    pair = D.tensor(D)
    return merge('gauge-through', N, [
        operator_report('gauge-through:pair', through_right, through_left, tolerance),
        operator_report('gauge-through:commute', compose(pair, R), compose(R, pair), tolerance),
    ])


def constant_identity_check(system, tolerance=None):
    """
    rho/lambda against both of its closed expressions, the sine product
    and the twist consistency alpha_K = c * alpha_J.
    """
    N = system.N
    sample = list(itertools.product(range(min(N, 4)), repeat=4))
    ratios = np.array([rho(system, *index) / lam(system, *index) for index in sample])
    power = np.full(len(sample), system.half_power((N + 1) * (N - 3)))
    cubed = (system.s_diff ** (N - 1) * system.factorial_table()[N - 1] / N) ** 3
    product = np.full(len(sample), (-1) ** N * system.half_power(N - 3) * cubed)
    return merge('constant-identities', N, [
        compare('rho-over-lambda', N, ratios, power, tolerance=tolerance),
        compare('rho-over-lambda-product', N, ratios, product, tolerance=tolerance),
        sine_product_check(system, tolerance),
        compare(
            'twist-consistency', N,
            [twist_scalar(system, 'kashaev')],
            [gauge_constant(system) * twist_scalar(system, 'jones')],
            tolerance=tolerance,
        ),
    ])


def closed_form_reports(system, tolerance=None):
    """The numerically conjugated R_J against its closed form, and both R_K modes"""
    tilde = conjugate_gauge(system, build_R_jones(system))
    return [
        operator_report('closed-form:tilde', tilde, closed_form_tilde(system), tolerance),
        operator_report(
            'closed-form:kashaev', build_R_kashaev(system, 'formula'), build_R_kashaev(system, 'closed'), tolerance
        ),
    ]


def equivalence_check(system, tolerance=None):
    """R_K = s^(-(N+1)(N-3)/2) * conjugate_gauge(R_J)"""
    gauged = conjugate_gauge(system, build_R_jones(system)).scaled(gauge_constant(system))
    return operator_report('equivalence', build_R_kashaev(system), gauged, tolerance)


def mu_reports(system, tolerance=None):
    """W D mu_J D^-1 W^-1 = mu_K, and mu_K^N = (-s)^N id"""
    N = system.N
    mu_kashaev = build_mu(system, 'kashaev')
    conjugated = compose(build_W(system), build_D(system), build_mu(system, 'jones'), build_D(system, -1),
                         build_W(system, inverse=True))
    power = compose(*([mu_kashaev] * N))
    expected = Operator.identity(N, 1, system.dtype).scaled((-system.s) ** N)
    return [
        operator_report('mu-conjugation', conjugated, mu_kashaev, tolerance),
        operator_report('mu-power', power, expected, tolerance),
    ]


def charge_conservation_check(R, tolerance=None):
    """Largest entry of R connecting states of different index sums"""
    N = R.N
    coo = R.matrix.tocoo()
    moved = (coo.row // N + coo.row % N) != (coo.col // N + coo.col % N)
    leak = float(np.max(np.abs(coo.data[moved]))) if moved.any() else 0.0
    return build_report('charge-conservation', N, leak, R.max_abs(), R.dim, tolerance)


def shift_invariance_check(system, R_kashaev=None, tolerance=None):
    """R_K commutes with X x X, X the cyclic shift"""
    R = R_kashaev or build_R_kashaev(system)
    shift = shift_operator(system)
    pair = shift.tensor(shift)
    return operator_report('shift-invariance', compose(pair, R), compose(R, pair), tolerance)


def support_check(system, R_kashaev=None, tolerance=None):
    """Entries of R_K outside the four index orderings must vanish"""
    R = R_kashaev or build_R_kashaev(system)
    N = system.N
    stray = 0.0
    for (row, col), value in R.entries().items():
        if ordering_case(*row, *col) is None:
            stray = max(stray, float(abs(value)))
    return build_report('kashaev-support', N, stray, R.max_abs(), R.dim, tolerance)


def inverse_reports(system, tolerance=None):
    """
    Flipped-conjugate inverse of R_J and gauged inverse of R_K against a
    direct dense inverse, done in double precision and only up to DIRECT_INVERSE_MAX_N.
    """
    N = system.N
    if N > DIRECT_INVERSE_MAX_N:
        return []
    jones = build_R_jones(system)
    inverse = jones_inverse(jones)
    reports = []
    for name, R, R_inverse in (
        ('inverse:jones', jones, inverse),
        ('inverse:kashaev', build_R_kashaev(system), kashaev_inverse(system, inverse)),
    ):
        direct = np.linalg.inv(R.dense().astype(np.complex128))
        computed = R_inverse.dense().astype(np.complex128)
        reports.append(compare(name, N, computed, direct, dim=R.dim, tolerance=tolerance))
    return reports


def check_lifted_ybe(system, tolerance=None):
    """
    Both triple products of R_K equal c^3 (W x W x W)(id x D x D^2) T_J
    (id x D^-1 x D^-2)(W^-1 x W^-1 x W^-1) for the matching triple product
    T_J of R_J.
    """
    N = system.N
    identity = Operator.identity(N, 1, system.dtype)
    W, W_inverse = build_W(system), build_W(system, inverse=True)
    lift = identity.tensor(build_D(system)).tensor(build_D(system, 2))
    lift_inverse = identity.tensor(build_D(system, -1)).tensor(build_D(system, -2))
    cube = W.tensor(W).tensor(W)
    cube_inverse = W_inverse.tensor(W_inverse).tensor(W_inverse)
    factor = gauge_constant(system) ** 3

    reports = []
    sides = zip(('left', 'right'), triple_products(build_R_kashaev(system)), triple_products(build_R_jones(system)))
    for side, kashaev, jones in sides:
        lifted = compose(cube, lift, jones, lift_inverse, cube_inverse).scaled(factor)
        reports.append(operator_report(f'lifted-ybe:{side}', kashaev, lifted, tolerance))
    return merge('lifted-ybe', N, reports)


def check_twist_gauge(system, tolerance=None):
    """R_K^(+-1)(id x mu_K) = c^(+-1) * conjugate_gauge(R_J^(+-1)(id x mu_J))"""
    N = system.N
    identity = Operator.identity(N, 1, system.dtype)
    jones = build_R_jones(system)
    inverse = jones_inverse(jones)
    kashaev_pair = (build_R_kashaev(system), kashaev_inverse(system, inverse))
    twist_jones = identity.tensor(build_mu(system, 'jones'))
    twist_kashaev = identity.tensor(build_mu(system, 'kashaev'))
    constant = gauge_constant(system)

    reports = []
    for sign, R_jones, R_kashaev in zip((1, -1), (jones, inverse), kashaev_pair):
        expected = conjugate_gauge(system, compose(R_jones, twist_jones)).scaled(constant ** sign)
        reports.append(operator_report(
            f'twist-gauge{"+" if sign > 0 else "-"}', compose(R_kashaev, twist_kashaev), expected, tolerance
        ))
    return merge('twist-gauge', N, reports)
