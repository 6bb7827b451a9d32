"""
The two finite q-sums S(alpha, beta), T(alpha, beta) with their product
closed forms, plus the recursions and identities used to derive them.
"""

import logging

import numpy as np

from .exceptions import DomainError
from .reports import build_report, compare, merge
from .roots import qbinom, qint

logger = logging.getLogger(__name__)

MODES = ('brute', 'closed')


def _check_arguments(system, alpha, mode):
    if mode not in MODES:
        raise DomainError(f"Unknown summation mode {mode!r}")
    if not 0 <= alpha <= system.N - 1:
        raise DomainError(f"alpha={alpha} outside [0, {system.N - 1}]")


def sum_S(system, alpha, beta, mode='closed'):
    """S(alpha, beta) = sum_i s^(beta i) [alpha+i choose i]"""
    _check_arguments(system, alpha, mode)
    N = system.N
    result = system.zero if mode == 'brute' else system.one
    if mode == 'brute':
        # Binomials with alpha + i >= N carry the factor [N] = 0
        for i in range(N - alpha):
            result = result + system.power(beta * i) * qbinom(system, alpha + i, i)
    else:
        for j in range(1, N - alpha):
            result = result * (1 - system.power(beta - alpha - 2 * j))
    return result


def sum_T(system, alpha, beta, mode='closed'):
    """T(alpha, beta) = sum_i (-1)^i s^(beta i) [alpha choose i]"""
    _check_arguments(system, alpha, mode)
    result = system.zero if mode == 'brute' else system.one
    if mode == 'brute':
        for i in range(alpha + 1):
            result = result + (-1) ** i * system.power(beta * i) * qbinom(system, alpha, i)
    else:
        for j in range(1, alpha + 1):
            result = result * (1 - system.power(beta + alpha + 1 - 2 * j))
    return result


def binom_or_zero(system, x, y):
    """[x choose y] extended by zero outside 0 <= y <= x"""
    if y < 0 or y > x:
        return system.zero
    return qbinom(system, x, y)


def closed_form_check(system, tolerance=None):
    """Brute-force S and T against their products for alpha in [0, N-1], beta in [-2N, 2N]"""
    N = system.N
    brute, closed = [], []
    for alpha in range(N):
        for beta in range(-2 * N, 2 * N + 1):
            for function in (sum_S, sum_T):
                brute.append(function(system, alpha, beta, 'brute'))
                closed.append(function(system, alpha, beta, 'closed'))
    return compare('sum-closed-forms', N, brute, closed, tolerance=tolerance)


def pascal_check(system, tolerance=None):
    """[a+i choose i] = s^-a [a+i-1 choose i-1] + s^i [a+i-1 choose i] on the whole valid grid"""
    N = system.N
    actual, expected = [], []
    for i in range(1, N):
        for alpha in range(0, N - i):
            actual.append(qbinom(system, alpha + i, i))
            expected.append(
                system.power(-alpha) * binom_or_zero(system, alpha + i - 1, i - 1)
                + system.power(i) * binom_or_zero(system, alpha + i - 1, i)
            )
    return compare('pascal', N, actual, expected, tolerance=tolerance)


def recursion_check(system, tolerance=None):
    """S(alpha-1, beta+1) = (1 - s^(beta-alpha)) S(alpha, beta), evaluated by brute force"""
    N = system.N
    actual, expected = [], []
    for alpha in range(1, N):
        for beta in range(-2 * N, 2 * N + 1):
            actual.append(sum_S(system, alpha - 1, beta + 1, 'brute'))
            expected.append((1 - system.power(beta - alpha)) * sum_S(system, alpha, beta, 'brute'))
    return compare('sum-recursion', N, actual, expected, tolerance=tolerance)


def periodicity_check(system):
    """Shifting beta by 2N must not change S or T at all"""
    N = system.N
    deviation = 0.0
    for alpha in range(N):
        for beta in range(-2 * N, 2 * N + 1):
            for function in (sum_S, sum_T):
                for mode in MODES:
                    difference = function(system, alpha, beta, mode) - function(system, alpha, beta + 2 * N, mode)
                    deviation = max(deviation, float(abs(difference)))
    return build_report('beta-periodicity', N, deviation, 1.0, tolerance=0.0)


def sine_product_check(system, tolerance=None):
    """prod_{k=1}^{N-1} 2 sin(k pi/N) = N, with 2 sin(k pi/N) read off Im(s^k)"""
    N = system.N
    factors = np.array([2 * system.power(k).imag for k in range(1, N)], dtype=system.real_dtype)
    return compare('sine-product', N, [np.prod(factors)], [N], tolerance=tolerance)


def symmetry_check(system, tolerance=None):
    """[N - k] = [k] for 0 <= k <= N, [N] = 0, and [k] real positive for 0 < k < N"""
    N = system.N
    values = np.array([qint(system, k) for k in range(N + 1)])
    mirrored = np.array([qint(system, N - k) for k in range(N + 1)])
    report = compare('qint-symmetry', N, values, mirrored, tolerance=tolerance)
    inner = values[1:N]
    positive = bool(np.all(inner.real > 0))
    imaginary = build_report('qint-real', N, float(np.max(np.abs(values.imag))), 1.0, tolerance=tolerance)
    sign = build_report('qint-positive', N, 0.0 if positive else 1.0, 1.0, tolerance=tolerance)
    return merge('qint-properties', N, [report, imaginary, sign])


def appendix_check(system, tolerance=None):
    """Everything the q-sum closed forms rest on, as one list of reports"""
    return [
        closed_form_check(system, tolerance),
        pascal_check(system, tolerance),
        recursion_check(system, tolerance),
        periodicity_check(system),
    ]
