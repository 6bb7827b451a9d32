from fractions import Fraction

from qarith.roots import RootSystem
from qarith.serializers import DeviationReportSerializer
from repns.representations import build_F, relations_check, representation_reports

from ...base import InvariantCommand
from ...config import RunConfig, exit_codes, integrity_error, parse_n_range, usage_error


class Command(InvariantCommand):
    help = 'Check the U_q(sl2) relations of E and F(p) and the Cartan transform coincidence'

    def add_arguments(self, parser):
        parser.add_argument('--n', default='2..16', help="N, N1..N2 or N1,N2,...")
        parser.add_argument(
            '--p',
            action='append',
            default=[],
            help='Extra parameter p for F(p), as a fraction such as 3/2; may repeat',
        )
        self.add_common_arguments(parser, threads=False)

    def handle(self, *args, **options):
        config = RunConfig.from_options('rep_check', options, parse_n_range(options['n']))
        try:
            extra = [Fraction(value) for value in options['p']]
        except (ValueError, ZeroDivisionError):
            raise usage_error(f"Invalid --p values {options['p']}")

        reports = []
        with exit_codes():
            for N in config.N_values:
                system = RootSystem(N, config.precision)
                reports.extend(representation_reports(system, config.tolerance))
                for p in extra:
                    reports.append(relations_check(system, build_F(system, p), config.tolerance))
        self.write_json(DeviationReportSerializer(reports, many=True).data)

        failed = [report.name for report in reports if not report.passed]
        if failed:
            raise integrity_error(f"Representation checks failed: {', '.join(failed)}")
