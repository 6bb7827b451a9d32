from qarith.serializers import DeviationReportSerializer

from ...base import InvariantCommand
from ...config import RunConfig, exit_codes, integrity_error, parse_n_range, usage_error
from ...suites import CHECKS, run_suite


class Command(InvariantCommand):
    help = 'Run identity checks over a range of N and print one JSON report per check'

    def add_arguments(self, parser):
        parser.add_argument(
            '--checks',
            default='all',
            help=f"Comma separated checks or 'all'; available: {', '.join(CHECKS)}",
        )
        parser.add_argument('--n', default='2..8', help="N, N1..N2 or N1,N2,...")
        self.add_common_arguments(parser)

    def handle(self, *args, **options):
        names = list(CHECKS) if options['checks'] == 'all' else [
            name.strip() for name in options['checks'].split(',') if name.strip()
        ]
        unknown = [name for name in names if name not in CHECKS]
        if unknown or not names:
            raise usage_error(f"Unknown checks {unknown}; choose from {', '.join(CHECKS)}")
        config = RunConfig.from_options('verify', options, parse_n_range(options['n']))

        with exit_codes():
            reports = run_suite(names, config.N_values, config.precision, config.tolerance, config.threads)
        self.write_json(DeviationReportSerializer(reports, many=True).data)

        failed = [report for report in reports if not report.passed]
        if failed:
            raise integrity_error(f"{len(failed)} of {len(reports)} checks failed: "
                                  f"{', '.join(f'{report.name} (N={report.N})' for report in failed)}")
        self.stderr.write(self.style.SUCCESS(f'All {len(reports)} checks passed'))
