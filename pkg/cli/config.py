"""
Run configuration shared by the management commands, and the translation
of library errors into the exit-code protocol: 0 success, 1 integrity
failure, 2 usage error.
"""

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional, Tuple

from django.conf import settings
from django.core.management.base import CommandError

from qarith.exceptions import IntegrityError, QuantumInvariantError, ZeroInvariantError
from qarith.roots import PRECISION_DTYPES

logger = logging.getLogger(__name__)

EXIT_INTEGRITY = 1
EXIT_USAGE = 2


def usage_error(message):
    return CommandError(message, returncode=EXIT_USAGE)


def integrity_error(message):
    return CommandError(message, returncode=EXIT_INTEGRITY)


def parse_n_range(text):
    """'5', '2..8' or '3,5,9' to a sorted tuple of N >= 2"""
    text = str(text).strip()
    try:
        if '..' in text:
            low, high = (int(part) for part in text.split('..', 1))
            values = tuple(range(low, high + 1))
        else:
            values = tuple(sorted({int(part) for part in text.split(',')}))
    except ValueError:
        raise usage_error(f"Invalid N range {text!r}; use N, N1..N2 or N1,N2,...")
    if not values:
        raise usage_error(f"N range {text!r} is empty")
    if values[0] < 2:
        raise usage_error(f"N must be at least 2, got {values[0]}")
    return values


@dataclass(frozen=True)
class RunConfig:
    command: str
    N_values: Tuple[int, ...]
    precision: str
    tolerance: Optional[float] = None
    threads: int = 1
    table: Optional[str] = None
    output_format: str = 'json'

    @classmethod
    def from_options(cls, command, options, N_values):
        precision = options.get('precision') or settings.QJK_PRECISION
        if precision not in PRECISION_DTYPES:
            raise usage_error(f"Unknown precision {precision!r}")
        tolerance = options.get('tolerance')
        if tolerance is not None and tolerance <= 0:
            raise usage_error('Tolerance must be positive')
        threads = options.get('threads') or settings.QJK_THREADS
        if threads < 1:
            raise usage_error('--threads must be at least 1')
        config = cls(
            command=command,
            N_values=tuple(N_values),
            precision=precision,
            tolerance=tolerance,
            threads=threads,
            table=options.get('table'),
            output_format=options.get('format') or 'json',
        )
        logger.info("%s run: N=%s precision=%s threads=%d", command, list(config.N_values), precision, threads)
        return config


@contextmanager
def exit_codes():
    """Re-raise library errors as CommandError with the matching return code"""
    try:
        yield
    except (IntegrityError, ZeroInvariantError) as exc:
        logger.error("Integrity failure: %s", exc)
        raise integrity_error(str(exc))
    except QuantumInvariantError as exc:
        raise usage_error(str(exc))
