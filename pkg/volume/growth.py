"""
Growth sequences v_N = 2 pi log|J_N(K)| / N, their extrapolated limit and
the comparison against sourced reference volumes.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from django.conf import settings

from braids.knot_table import load_constants, load_knot_table
from braids.words import closure_components
from evaluator.invariants import one_one_invariant, zero_limit
from qarith.exceptions import DomainError, FitError, IntegrityError, ZeroInvariantError
from qarith.reports import DeviationReport, compare
from qarith.roots import resolve_precision
from rmatrix.enhanced import enhanced_operator

logger = logging.getLogger(__name__)

FIT_MODELS = ('plain', 'corrected')
MIN_FIT_POINTS = 5


@dataclass(frozen=True)
class GrowthPoint:
    N: int
    abs_J: float
    v_N: float


@dataclass(frozen=True)
class FitResult:
    model: str
    limit: float
    a: float = 0.0
    b: float = 0.0
    residual: float = 0.0


@dataclass(frozen=True)
class GrowthSeries:
    name: str
    points: Tuple[GrowthPoint, ...]
    reference: Optional[float] = None
    v3: Optional[float] = None
    fit: Optional[FitResult] = None

    @property
    def N_values(self):
        return [point.N for point in self.points]

    @property
    def log_values(self):
        """log|J_N| for every point"""
        return [point.v_N * point.N / (2 * math.pi) for point in self.points]


@dataclass(frozen=True)
class SimplicialReport:
    name: str
    model: str
    limit: float
    v3: float
    norm_estimate: float
    reference_volume: Optional[float]
    reference_norm: Optional[float]
    relative_error: Optional[float]
    summands: Tuple[str, ...] = ()
    summand_limit: Optional[float] = None
    additivity: Optional[DeviationReport] = None


def _precision_for(N, precision):
    if precision is not None:
        return resolve_precision(precision)
    default = resolve_precision()
    if N > settings.QJK_EXTENDED_ABOVE_N and default != 'extended':
        logger.warning("N=%d is above %d; escalating to extended precision", N, settings.QJK_EXTENDED_ABOVE_N)
        return 'extended'
    return default


def growth_point(entry, N, precision=None, threads=None, tolerance=None):
    """One (N, |J_N|, v_N) cell, J_N taken through S_J and cross-checked against S_K for small N"""
    precision = _precision_for(N, precision)
    word = entry.braid
    jones = one_one_invariant(enhanced_operator(N, 'jones', precision), word, rows=(0,), threads=threads,
                              tolerance=tolerance).scalar
    if N <= settings.QJK_CROSS_CHECK_MAX_N:
        kashaev = one_one_invariant(enhanced_operator(N, 'kashaev', precision), word, rows=(0,), threads=threads,
                                    tolerance=tolerance).scalar
        report = compare('agreement', N, [jones], [kashaev], tolerance=tolerance, detail=entry.name)
        if not report.passed:
            raise IntegrityError(
                f"S_J and S_K disagree on {entry.name} at N={N}: deviation {report.max_deviation:.3e}"
            )

    magnitude = float(np.abs(jones))
    if magnitude <= zero_limit(tolerance):
        raise ZeroInvariantError(entry.name, N)
    v_N = 2 * math.pi * float(np.log(np.abs(jones))) / N
    logger.info("%s N=%d: |J_N| = %.17g, v_N = %.17g (%s)", entry.name, N, magnitude, v_N, precision)
    return GrowthPoint(N, magnitude, v_N)


def growth_sequence(entry, N_range, precision=None, threads=None, tolerance=None, constants=None):
    """
    The growth series of a table entry over N_range, in increasing N. Runs
    above QJK_EXTENDED_ABOVE_N switch to extended precision unless a
    precision is given.
    """
    if closure_components(entry.braid) != 1:
        raise DomainError(f"{entry.name} does not close to a knot")
    N_values = sorted(set(N_range))
    if not N_values:
        raise DomainError('Empty N range')
    points = tuple(growth_point(entry, N, precision, threads, tolerance) for N in N_values)
    constants = load_constants() if constants is None else constants
    return GrowthSeries(
        name=entry.name,
        points=points,
        reference=entry.reference_volume,
        v3=constants.get('v3'),
    )


def fit_limit(series, model='corrected'):
    """
    The plain model takes the last v_N. The corrected model is the least
    squares fit of v_N = V + a log(N)/N + b/N; it is a heuristic for the
    finite-N shape of the sequence, not an error bound.
    """
    if model not in FIT_MODELS:
        raise DomainError(f"Unknown fit model {model!r}; choose from {FIT_MODELS}")
    if len(series.points) < MIN_FIT_POINTS:
        raise FitError(f"{series.name}: {len(series.points)} points, need at least {MIN_FIT_POINTS}")

    y = np.array([point.v_N for point in series.points])
    if model == 'plain':
        return FitResult(model, float(y[-1]))

    N = np.array(series.N_values, dtype=float)
    A = np.column_stack([np.ones_like(N), np.log(N) / N, 1 / N])
    params, _, rank, _ = np.linalg.lstsq(A, y, rcond=None)
    if rank < A.shape[1]:
        raise FitError(f"{series.name}: rank-deficient fit (rank {rank})")
    residual = float(np.linalg.norm(A @ params - y))
    limit, a, b = (float(value) for value in params)
    logger.info("%s corrected fit: V = %.17g, a = %.6g, b = %.6g, residual %.3e", series.name, limit, a, b,
                residual)
    return FitResult(model, limit, a, b, residual)


def _table_entry(name, table):
    for entry in table:
        if entry.name == name:
            return entry
    raise DomainError(f"No knot named {name!r} in the knot table")


def simplicial_report(series, table=None, constants=None, precision=None, threads=None, tolerance=None):
    """
    ||K|| = V/v3 from the fitted limit, compared with the reference volume.
    For connected sums the summands are evaluated at the same N and
    log|J_N| is checked for additivity point by point.
    """
    table = load_knot_table() if table is None else table
    constants = load_constants() if constants is None else constants
    fit = series.fit or FitResult('plain', series.points[-1].v_N)
    v3 = constants['v3']
    entry = _table_entry(series.name, table)

    reference = entry.reference_volume
    # Absolute error when the reference volume is zero
    relative_error = None
    if reference:
        relative_error = abs(fit.limit - reference) / reference
    elif reference is not None:
        relative_error = abs(fit.limit)

    summand_limit, additivity = None, None
    if entry.summands:
        parts = [
            growth_sequence(_table_entry(name, table), series.N_values, precision, threads, tolerance, constants)
            for name in entry.summands
        ]
        expected = np.sum([part.log_values for part in parts], axis=0)
        additivity = compare('additivity', max(series.N_values), series.log_values, expected,
                             tolerance=tolerance, detail=' # '.join(entry.summands))
        if len(series.points) >= MIN_FIT_POINTS:
            summand_limit = sum(fit_limit(part, fit.model).limit for part in parts)

    return SimplicialReport(
        name=series.name,
        model=fit.model,
        limit=fit.limit,
        v3=v3,
        norm_estimate=fit.limit / v3,
        reference_volume=reference,
        reference_norm=None if reference is None else reference / v3,
        relative_error=relative_error,
        summands=entry.summands,
        summand_limit=summand_limit,
        additivity=additivity,
    )
