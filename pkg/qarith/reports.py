"""
Deviation reports and the tolerance policy used by every identity check.
"""

import logging
from dataclasses import dataclass

import numpy as np
from django.conf import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeviationReport:
    """
    Outcome of one identity check at one N
    """
    name: str
    N: int
    max_deviation: float
    tolerance: float
    passed: bool
    detail: str = ''


def default_tolerance(tolerance=None):
    return float(settings.QJK_TOLERANCE if tolerance is None else tolerance)


def tolerance_for(scale, dim=1, tolerance=None):
    """Pass threshold: base * max(1, scale) * dim"""
    return default_tolerance(tolerance) * max(1.0, float(scale)) * dim


def max_abs(values):
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def build_report(name, N, deviation, scale, dim=1, tolerance=None, detail=''):
    limit = tolerance_for(scale, dim, tolerance)
    deviation = float(deviation)
    passed = bool(deviation <= limit)
    if passed:
        logger.debug("%s N=%d: deviation %.3e (limit %.3e)", name, N, deviation, limit)
    else:
        logger.warning("%s N=%d failed: deviation %.3e exceeds %.3e %s", name, N, deviation, limit, detail)
    return DeviationReport(name, N, deviation, limit, passed, detail)


def compare(name, N, actual, expected, dim=1, tolerance=None, detail=''):
    """Entrywise comparison of two equally shaped collections of scalars"""
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    scale = max(max_abs(actual), max_abs(expected))
    return build_report(name, N, max_abs(actual - expected), scale, dim, tolerance, detail)


def _severity(report):
    if report.tolerance > 0:
        return report.max_deviation / report.tolerance
    return float('inf') if report.max_deviation > 0 else 0.0


def merge(name, N, reports, detail=''):
    """Fold several reports into the one closest to failing; passes only if all pass"""
    reports = list(reports)
    worst = max(reports, key=_severity)
    return DeviationReport(
        name,
        N,
        worst.max_deviation,
        worst.tolerance,
        all(report.passed for report in reports),
        detail or ', '.join(report.name for report in reports if not report.passed),
    )
