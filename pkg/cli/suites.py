"""
The registry of identity checks `verify` can run. Each entry maps a check
name to a function of (system, tolerance) returning deviation reports.
"""

import dataclasses
import logging
from concurrent.futures import ThreadPoolExecutor

from braids.knot_table import load_knot_table
from evaluator.invariants import agreement_check
from qarith.roots import RootSystem, pochhammer_identities_check
from qarith.sums import appendix_check, symmetry_check
from repns.representations import representation_reports
from rmatrix.checks import (
    charge_conservation_check,
    check_gauge_through,
    check_lifted_ybe,
    check_twist_gauge,
    check_ybe,
    closed_form_reports,
    constant_identity_check,
    equivalence_check,
    inverse_reports,
    mu_reports,
    shift_invariance_check,
    support_check,
)
from rmatrix.enhanced import axiom_reports, make_enhanced
from rmatrix.matrices import build_R_jones, build_R_kashaev

logger = logging.getLogger(__name__)

# Above this N agreement is probed on one row of the tangle endomorphism
AGREEMENT_FULL_ROWS_MAX_N = 10


def _ybe(system, tolerance):
    return [check_ybe(build_R_jones(system), tolerance), check_ybe(build_R_kashaev(system), tolerance)]


def _enhancement(system, tolerance):
    reports = []
    for kind in ('jones', 'kashaev'):
        reports.extend(axiom_reports(make_enhanced(system, kind, verify=False), tolerance))
    return reports


def _closed_forms(system, tolerance):
    return closed_form_reports(system, tolerance) + [support_check(system, tolerance=tolerance)]


def _agreement(system, tolerance, table=None):
    N = system.N
    full = N <= AGREEMENT_FULL_ROWS_MAX_N
    reports = []
    for entry in load_knot_table(table):
        report = agreement_check(entry.braid, N, system.precision, rows=None if full else (0,), tolerance=tolerance,
                                 threads=1, prune_charge=False if full else None)
        reports.append(dataclasses.replace(report, name=f'agreement:{entry.name}'))
    return reports


CHECKS = {
    'appendix': lambda system, tolerance: appendix_check(system, tolerance),
    'pochhammer': lambda system, tolerance: [pochhammer_identities_check(system, tolerance),
                                             symmetry_check(system, tolerance)],
    'constants': lambda system, tolerance: [constant_identity_check(system, tolerance)],
    'closed-forms': _closed_forms,
    'equivalence': lambda system, tolerance: [equivalence_check(system, tolerance)],
    'ybe': _ybe,
    'enhancement': _enhancement,
    'mu': mu_reports,
    'gauge-through': lambda system, tolerance: [check_gauge_through(system, tolerance=tolerance)],
    'charge': lambda system, tolerance: [charge_conservation_check(build_R_jones(system), tolerance)],
    'shift': lambda system, tolerance: [shift_invariance_check(system, tolerance=tolerance)],
    'inverse': inverse_reports,
    'representations': representation_reports,
    'lifted-ybe': lambda system, tolerance: [check_lifted_ybe(system, tolerance)],
    'twist-gauge': lambda system, tolerance: [check_twist_gauge(system, tolerance)],
    'agreement': _agreement,
}


def run_suite(names, N_values, precision=None, tolerance=None, threads=1):
    """
    Reports for every selected check at every N, ordered by N and then by
    the order of `names`. Each N runs as one task on the thread pool.
    """
    def run(N):
        system = RootSystem(N, precision)
        reports = []
        for name in names:
            logger.info("Running %s at N=%d", name, N)
            reports.extend(CHECKS[name](system, tolerance))
        return reports

    if threads > 1 and len(N_values) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            batches = list(executor.map(run, N_values))
    else:
        batches = [run(N) for N in N_values]
    return [report for batch in batches for report in batch]
