"""
Scalar arithmetic at the primitive 2N-th root of unity s = exp(pi i/N).
"""

import logging
from fractions import Fraction

import mpmath
import numpy as np
from django.conf import settings

from .exceptions import DomainError, NumericalError
from .reports import compare

logger = logging.getLogger(__name__)

PRECISION_DTYPES = {
    'double': np.complex128,
    'extended': np.clongdouble,
}

# Decimal digits carried while the tables are built, before the cast
WORKING_DPS = 40


def resolve_precision(precision=None):
    precision = precision or settings.QJK_PRECISION
    if precision not in PRECISION_DTYPES:
        raise DomainError(f"Unknown precision {precision!r}; choose from {sorted(PRECISION_DTYPES)}")
    return precision


def cast_mp(value, dtype):
    """Convert an mpmath number to a numpy scalar of the given complex dtype"""
    value = mpmath.mpc(value)
    dtype = np.dtype(dtype)
    if dtype == np.dtype(np.complex128):
        return np.complex128(complex(value))
    # Decimal strings keep the long double mantissa that complex() would drop
    result = np.zeros((), dtype=dtype)
    result.real = np.longdouble(mpmath.nstr(value.real, 30))
    result.imag = np.longdouble(mpmath.nstr(value.imag, 30))
    return result[()]


def mp_array(values, dtype):
    return np.array([cast_mp(value, dtype) for value in values], dtype=dtype)


def ensure_finite(value, what):
    if not np.all(np.isfinite(value)):
        raise NumericalError(f"Non-finite value produced by {what}")
    return value


class RootSystem:
    """
    The root s = exp(pi i/N) with q = s^2, the q-integers [k] and the
    q-factorials [k]! for one N at one precision.

    Powers are tabulated on the half-integer grid s^(k/2), k mod 4N, so
    every exponent met in the R-matrix formulas is a table lookup.
    Instances are immutable and safe to share between threads.
    """

    def __init__(self, N, precision=None):
        if isinstance(N, bool) or int(N) != N or N < 2:
            raise DomainError(f"N must be an integer >= 2, got {N!r}")
        self.N = int(N)
        self.precision = resolve_precision(precision)
        self.dtype = np.dtype(PRECISION_DTYPES[self.precision])
        self.real_dtype = np.finfo(self.dtype).dtype

        N = self.N
        with mpmath.workdps(WORKING_DPS):
            half_steps = [
                mpmath.mpc(mpmath.cospi(mpmath.mpf(k) / (2 * N)), mpmath.sinpi(mpmath.mpf(k) / (2 * N)))
                for k in range(4 * N)
            ]
            unit = mpmath.sinpi(mpmath.mpf(1) / N)
            integers = [mpmath.sinpi(mpmath.mpf(k) / N) / unit for k in range(N + 1)]
            factorials = [mpmath.mpf(1)]
            for k in range(1, N):
                factorials.append(factorials[-1] * integers[k])

        self._half_powers = mp_array(half_steps, self.dtype)
        self._integers = mp_array(integers, self.dtype)
        self._factorials = mp_array(factorials, self.dtype)
        for table in (self._half_powers, self._integers, self._factorials):
            table.setflags(write=False)
        logger.debug("Built root tables for N=%d at %s precision", N, self.precision)

    def __repr__(self):
        return f"RootSystem(N={self.N}, precision={self.precision!r})"

    @property
    def s(self):
        return self._half_powers[2]

    @property
    def q(self):
        return self.half_power(4)

    @property
    def s_diff(self):
        """s - s^-1 = 2i sin(pi/N)"""
        return self.s - self._half_powers[-2]

    @property
    def one(self):
        return self.dtype.type(1)

    @property
    def zero(self):
        return self.dtype.type(0)

    def half_power(self, k):
        """s^(k/2) for an integer k or an integer numpy array"""
        return self._half_powers[np.mod(k, 4 * self.N)]

    def power(self, exponent):
        """s^e for an integer or half-integer exponent"""
        doubled = Fraction(exponent) * 2
        if doubled.denominator != 1:
            raise DomainError(f"Exponent {exponent} is not a half-integer; use real_power")
        return self.half_power(int(doubled))

    def q_power(self, exponent):
        return self.power(2 * Fraction(exponent))

    def real_power(self, exponent):
        """s^x = exp(pi i x/N) for any real or complex x"""
        with mpmath.workdps(WORKING_DPS):
            value = mpmath.expjpi(mpmath.mpmathify(exponent) / self.N)
        return cast_mp(value, self.dtype)

    def cast(self, value):
        return self.dtype.type(value)

    def factorial_table(self):
        """[0]!, [1]!, ..., [N-1]! as a read-only array"""
        return self._factorials

    def integer_table(self):
        """[0], [1], ..., [N] as a read-only array"""
        return self._integers


def qint(system, k):
    """The q-integer [k] = (s^k - s^-k)/(s - s^-1)"""
    if isinstance(k, (int, np.integer)):
        N = system.N
        r = int(k) % (2 * N)
        if r <= N:
            return system._integers[r]
        return -system._integers[2 * N - r]
    with mpmath.workdps(WORKING_DPS):
        angle = mpmath.pi / system.N
        value = mpmath.sin(angle * mpmath.mpmathify(k)) / mpmath.sin(angle)
    return ensure_finite(cast_mp(value, system.dtype), 'qint')


def qfact(system, m):
    """[m]! = [m][m-1]...[1]; exactly zero once the factor [N] appears"""
    if m < 0:
        raise DomainError(f"q-factorial of a negative argument ({m})")
    if m >= system.N:
        return system.zero
    return system._factorials[m]


def qbinom(system, x, y):
    if not 0 <= y <= x < system.N:
        raise DomainError(f"q-binomial ({x} choose {y}) outside 0 <= y <= x < {system.N}")
    table = system._factorials
    return table[x] / (table[y] * table[x - y])


def pochhammer_q(system, x, n):
    """(x)_n = (1 - x)(1 - x^2)...(1 - x^n)"""
    if n < 0:
        raise DomainError(f"Pochhammer length must be nonnegative, got {n}")
    x = system.cast(x)
    result = system.one
    x_power = system.one
    for _ in range(n):
        x_power = x_power * x
        result = result * (1 - x_power)
    return ensure_finite(result, 'pochhammer_q')


def theta(n, N):
    """1 if 0 <= n < N, else 0"""
    return 1 if 0 <= n < N else 0


def res_mod(x, N):
    """Residue of x modulo N in [0, N-1], negative x included"""
    return x % N


def pochhammer_identities_check(system, tolerance=None):
    """Compare (q)_n and (q^-1)_n with their q-factorial expressions for 0 <= n < N"""
    q = system.q
    q_inverse = system.half_power(-4)
    actual, expected = [], []
    for n in range(system.N):
        common = system.s_diff ** n * qfact(system, n)
        actual.append(pochhammer_q(system, q, n))
        expected.append((-1) ** n * system.half_power(n * (n + 1)) * common)
        actual.append(pochhammer_q(system, q_inverse, n))
        expected.append(system.half_power(-n * (n + 1)) * common)
    return compare('pochhammer', system.N, actual, expected, tolerance=tolerance)
