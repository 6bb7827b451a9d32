from qarith.roots import RootSystem
from rmatrix.matrices import build_R_jones, build_R_kashaev
from rmatrix.serializers import OperatorDumpSerializer

from ...base import InvariantCommand
from ...config import exit_codes, usage_error

BUILDERS = {
    'jones': build_R_jones,
    'kashaev': build_R_kashaev,
}


class Command(InvariantCommand):
    help = 'Print every entry of R_J or R_K as JSON [row, col, re, im] records'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, required=True)
        parser.add_argument('--kind', choices=sorted(BUILDERS), default='kashaev')
        self.add_common_arguments(parser, threads=False)

    def handle(self, *args, **options):
        N = options['n']
        if N < 2:
            raise usage_error(f"N must be at least 2, got {N}")
        with exit_codes():
            operator = BUILDERS[options['kind']](RootSystem(N, options['precision']))
        self.write_json(OperatorDumpSerializer({'N': N, 'kind': options['kind'], 'operator': operator}).data)
