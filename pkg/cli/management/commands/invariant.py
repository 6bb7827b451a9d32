from braids.knot_table import lookup_knot
from braids.words import parse_braid
from evaluator.invariants import closed_trace_invariant, one_one_invariant
from evaluator.serializers import InvariantPairSerializer, TangleValueSerializer
from qarith.serializers import ComplexField
from rmatrix.enhanced import enhanced_operator

from ...base import InvariantCommand
from ...config import RunConfig, exit_codes, parse_n_range


class Command(InvariantCommand):
    help = 'Evaluate the (1,1)-tangle invariant of a braid closure through S_J, S_K or both'

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument('--braid', help='Braid word such as "3: 1 -2 1 -2"')
        source.add_argument('--knot', help='Name of a knot table entry')
        parser.add_argument('--n', required=True, help="N, N1..N2 or N1,N2,...")
        parser.add_argument('--operator', choices=('jones', 'kashaev', 'both'), default='both')
        parser.add_argument(
            '--closed-trace',
            action='store_true',
            help='Also report the fully closed trace T_S, which vanishes for knots',
        )
        parser.add_argument('--format', choices=('json',), default='json')
        parser.add_argument('--table', help='Knot table path (default: QJK_KNOT_TABLE)')
        self.add_common_arguments(parser)

    def handle(self, *args, **options):
        config = RunConfig.from_options('invariant', options, parse_n_range(options['n']))
        with exit_codes():
            if options['braid'] is not None:
                word = parse_braid(options['braid'])
            else:
                word = lookup_knot(options['knot'], config.table).braid
            results = [
                self.evaluate(word, N, options['operator'], options['closed_trace'], config)
                for N in config.N_values
            ]
        self.write_json(results[0] if len(results) == 1 else results)

    def evaluate(self, word, N, kind, closed, config):
        kinds = ('jones', 'kashaev') if kind == 'both' else (kind,)
        operators = {name: enhanced_operator(N, name, config.precision) for name in kinds}
        values = {
            name: one_one_invariant(operator, word, threads=config.threads, tolerance=config.tolerance)
            for name, operator in operators.items()
        }
        if kind == 'both':
            data = InvariantPairSerializer(values).data
        else:
            data = TangleValueSerializer(values[kind]).data
        if closed:
            data['closed_trace'] = {
                name: ComplexField().to_representation(closed_trace_invariant(operator, word, threads=config.threads))
                for name, operator in operators.items()
            }
        return data
