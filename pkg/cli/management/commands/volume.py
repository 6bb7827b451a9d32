import dataclasses
import io

from braids.knot_table import load_knot_table, lookup_knot
from braids.serializers import KnotEntryOutputSerializer
from volume.growth import FIT_MODELS, fit_limit, growth_sequence, simplicial_report
from volume.serializers import GrowthSeriesSerializer, SimplicialReportSerializer

from ...base import InvariantCommand
from ...config import RunConfig, exit_codes, usage_error
from ...output import write_csv


class Command(InvariantCommand):
    help = 'Growth sequence v_N = 2 pi log|J_N| / N of a table knot, with an extrapolated limit'

    def add_arguments(self, parser):
        parser.add_argument('--knot', required=True, help='Name of a knot table entry')
        parser.add_argument('--n-min', type=int, default=5)
        parser.add_argument('--n-max', type=int, default=30)
        parser.add_argument('--fit', choices=FIT_MODELS + ('none',), default='corrected')
        parser.add_argument('--format', choices=('csv', 'json'), default='json')
        parser.add_argument('--table', help='Knot table path (default: QJK_KNOT_TABLE)')
        self.add_common_arguments(parser)

    def handle(self, *args, **options):
        low, high = options['n_min'], options['n_max']
        if low < 2 or high < low:
            raise usage_error(f"Need 2 <= --n-min <= --n-max, got {low}..{high}")
        config = RunConfig.from_options('volume', options, range(low, high + 1))

        # An explicit --precision pins every N; otherwise large N escalate
        precision = options['precision']
        with exit_codes():
            entry = lookup_knot(options['knot'], config.table)
            series = growth_sequence(entry, config.N_values, precision, config.threads, config.tolerance)
            report = None
            if options['fit'] != 'none' and config.output_format == 'json':
                series = dataclasses.replace(series, fit=fit_limit(series, options['fit']))
                report = simplicial_report(series, load_knot_table(config.table), precision=precision,
                                           threads=config.threads, tolerance=config.tolerance)

        if config.output_format == 'csv':
            buffer = io.StringIO()
            write_csv(buffer, ('N', 'absJ', 'v_N'), ((point.N, point.abs_J, point.v_N) for point in series.points))
            self.stdout.write(buffer.getvalue(), ending='')
            return

        data = GrowthSeriesSerializer(series).data
        data['entry'] = KnotEntryOutputSerializer(entry).data
        data['report'] = None if report is None else SimplicialReportSerializer(report).data
        self.write_json(data)
