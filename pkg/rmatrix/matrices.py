"""
Builders for the colored-Jones and Kashaev R-matrices, the gauge matrices
W and D, the twist matrices mu, and the closed forms of the conjugated
R-matrices.
"""

import itertools
import logging

import numpy as np
from django.conf import settings

from qarith.exceptions import DomainError
from qarith.roots import pochhammer_q, qfact, res_mod, theta

from .operators import Operator, compose

logger = logging.getLogger(__name__)

KINDS = ('jones', 'kashaev')
KASHAEV_MODES = ('formula', 'closed')


def _check_kind(kind):
    if kind not in KINDS:
        raise DomainError(f"Unknown operator kind {kind!r}; choose from {KINDS}")


def build_W(system, inverse=False):
    """W_j^i = s^(2ij); its inverse is s^(-2ij)/N"""
    N = system.N
    exponents = 4 * np.outer(np.arange(N), np.arange(N))
    if inverse:
        dense = system.half_power(-exponents) / N
    else:
        dense = system.half_power(exponents)
    return Operator.from_dense(dense, N, 1, label='W^-1' if inverse else 'W')


def build_D(system, power=1):
    """D^power, with D_j^i = delta_ij s^((N-1)i)"""
    N = system.N
    diagonal = system.half_power(2 * power * (N - 1) * np.arange(N))
    return Operator.from_dense(np.diag(diagonal), N, 1, label=f'D^{power}')


def build_R_jones(system):
    """
    The colored-Jones R-matrix. Entry (R_J)_{kl}^{ij} is nonzero only for
    l = i + n, k = j - n with 0 <= n <= min(N-1-i, j).
    """
    N = system.N
    factorials = system.factorial_table()
    i, j = (grid.ravel() for grid in np.meshgrid(np.arange(N), np.arange(N), indexing='ij'))
    rows, cols, values = [], [], []
    for n in range(N):
        mask = (i <= N - 1 - n) & (j >= n)
        ii, jj = i[mask], j[mask]
        # Twice the exponent of s, so the power is a table lookup
        doubled = (2 * ii - N + 1) * (2 * jj - N + 1) - 2 * n * (ii - jj) - n * (n + 1)
        coefficient = system.s_diff ** n / factorials[n]
        values.append(
            coefficient
            * factorials[ii + n] / factorials[ii]
            * factorials[N - 1 + n - jj] / factorials[N - 1 - jj]
            * system.half_power(doubled)
        )
        rows.append((jj - n) * N + ii + n)
        cols.append(ii * N + jj)
    operator = Operator.from_entries(
        N, 2, np.concatenate(rows), np.concatenate(cols), np.concatenate(values), system.dtype, label='R_J'
    )
    logger.info("Built R_J for N=%d (%d nonzero entries)", N, operator.nnz)
    return operator


def conjugate_gauge(system, M):
    """(W x W)(id x D) M (id x D^-1)(W^-1 x W^-1)"""
    N = system.N
    if M.arity != 2 or M.N != N:
        raise DomainError(f"Gauge conjugation needs an arity-2 operator at N={N}, got {M!r}")
    W, W_inverse = build_W(system), build_W(system, inverse=True)
    identity = Operator.identity(N, 1, system.dtype)
    product = compose(
        W.tensor(W),
        identity.tensor(build_D(system)),
        M,
        identity.tensor(build_D(system, -1)),
        W_inverse.tensor(W_inverse),
    )
    return Operator.from_dense(product.dense(), N, 2, drop=settings.QJK_SPARSE_DROP)


def gauge_constant(system):
    """c = s^(-(N+1)(N-3)/2), the factor with R_K = c * conjugate_gauge(R_J)"""
    N = system.N
    return system.half_power(-(N + 1) * (N - 3))


def ordering_case(a, b, c, d):
    """Which of the four supported index orderings (1-4) holds, or None"""
    if d >= b > a >= c:
        return 1
    if b > a >= c >= d:
        return 2
    if c >= d >= b > a:
        return 3
    if a >= c >= d >= b:
        return 4
    return None


def _ordering_factor(system, a, b, c, d):
    """
    Signed q-factorial ratio shared by both closed forms, or None outside
    the four supported orderings of (a, b, c, d).
    """
    N = system.N
    case = ordering_case(a, b, c, d)
    if case == 1:
        sign, top, bottom = a + b + 1, (d - c - 1, N - 1 + c - a), (d - b, b - a - 1)
    elif case == 2:
        sign, top, bottom = a + c, (b - d - 1, N - 1 + c - a), (c - d, b - a - 1)
    elif case == 3:
        sign, top, bottom = b + d, (N - 1 + b - d, c - a - 1), (c - d, b - a - 1)
    elif case == 4:
        sign, top, bottom = c + d, (N - 1 + b - d, a - b), (c - d, a - c)
    else:
        return None
    assert min(top + bottom) >= 0, (a, b, c, d)
    value = (-1) ** sign * qfact(system, top[0]) * qfact(system, top[1])
    return value / (qfact(system, bottom[0]) * qfact(system, bottom[1]))


def _exponent_tail(a, b, c, d):
    return c + d - 2 * b + (a - d) * (c - b)


def rho(system, a, b, c, d):
    """s^(-N^2/2+1/2+c+d-2b+(a-d)(c-b)) [N-1]! (s-s^-1)^(2(N-1)) / N^2"""
    N = system.N
    phase = system.half_power(-N * N + 1 + 2 * _exponent_tail(a, b, c, d))
    return phase * qfact(system, N - 1) * system.s_diff ** (2 * (N - 1)) / N ** 2


def lam(system, a, b, c, d):
    """
    Kashaev closed-form prefactor. The sign (-1)^(N-1) makes it agree with
    the theta/residue definition of R_K for every N.
    """
    N = system.N
    phase = system.half_power(-N * N + N + 4 + 2 * _exponent_tail(a, b, c, d))
    value = phase * system.s_diff ** (1 - N) * N / qfact(system, N - 1) ** 2
    return (-1) ** (N - 1) * value


def _closed_form(system, prefactor, label):
    N = system.N
    rows, cols, values = [], [], []
    for a, b, c, d in itertools.product(range(N), repeat=4):
        factor = _ordering_factor(system, a, b, c, d)
        if factor is None:
            continue
        rows.append(a * N + b)
        cols.append(c * N + d)
        values.append(prefactor(system, a, b, c, d) * factor)
    return Operator.from_entries(N, 2, rows, cols, values, system.dtype, label=label)


def closed_form_tilde(system):
    """The four-case closed form of the gauge-conjugated colored-Jones R-matrix"""
    return _closed_form(system, rho, 'closed tilde R_J')


def _pochhammer_tables(system):
    """(q)_n and (q^-1)_n for 0 <= n < N"""
    q, q_inverse = system.q, system.half_power(-4)
    forward = [pochhammer_q(system, q, n) for n in range(system.N)]
    backward = [pochhammer_q(system, q_inverse, n) for n in range(system.N)]
    return forward, backward


def _kashaev_entry(system, a, b, c, d, forward, backward):
    N = system.N
    first, second = res_mod(b - a - 1, N), res_mod(c - d, N)
    third, fourth = res_mod(a - c, N), res_mod(d - b, N)
    if not (theta(first + second, N) and theta(third + fourth, N)):
        return None
    numerator = N * system.q_power(1 + c - b + (a - d) * (c - b))
    return numerator / (forward[first] * backward[third] * forward[second] * backward[fourth])


def build_R_kashaev(system, mode='formula'):
    """Kashaev's R-matrix from the theta/residue formula or from the four-case closed form"""
    if mode not in KASHAEV_MODES:
        raise DomainError(f"Unknown Kashaev mode {mode!r}; choose from {KASHAEV_MODES}")
    if mode == 'closed':
        operator = _closed_form(system, lam, 'R_K closed')
    else:
        N = system.N
        forward, backward = _pochhammer_tables(system)
        rows, cols, values = [], [], []
        for a, b, c, d in itertools.product(range(N), repeat=4):
            value = _kashaev_entry(system, a, b, c, d, forward, backward)
            if value is None:
                continue
            rows.append(a * N + b)
            cols.append(c * N + d)
            values.append(value)
        operator = Operator.from_entries(N, 2, rows, cols, values, system.dtype, label='R_K')
    logger.info("Built R_K (%s) for N=%d (%d nonzero entries)", mode, system.N, operator.nnz)
    return operator


def build_mu(system, kind):
    """mu_J = diag(s^(2i-N+1)); mu_K = -s times the cyclic shift v_j -> v_(j+1 mod N)"""
    _check_kind(kind)
    N = system.N
    indices = np.arange(N)
    if kind == 'jones':
        return Operator.from_entries(
            N, 1, indices, indices, system.half_power(2 * (2 * indices - N + 1)), system.dtype, label='mu_J'
        )
    values = np.full(N, -system.s, dtype=system.dtype)
    return Operator.from_entries(N, 1, indices, (indices + 1) % N, values, system.dtype, label='mu_K')


def shift_operator(system, power=1):
    """The cyclic shift v_j -> v_(j+power mod N)"""
    N = system.N
    indices = np.arange(N)
    return Operator.from_entries(N, 1, indices, (indices + power) % N, np.ones(N), system.dtype, label='X')


def twist_scalar(system, kind):
    """alpha of the enhanced operator: s^((N^2-1)/2) for Jones, -s for Kashaev"""
    _check_kind(kind)
    if kind == 'jones':
        return system.half_power(system.N ** 2 - 1)
    return -system.s
