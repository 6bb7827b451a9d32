from django.core.management.base import BaseCommand

from qarith.roots import PRECISION_DTYPES

from .output import render_json


class InvariantCommand(BaseCommand):
    """Options shared by every command of the toolkit"""

    def add_common_arguments(self, parser, threads=True):
        parser.add_argument(
            '--precision',
            choices=sorted(PRECISION_DTYPES),
            help='Scalar precision (default: QJK_PRECISION)',
        )
        parser.add_argument(
            '--tolerance',
            type=float,
            help='Base tolerance of the deviation checks (default: QJK_TOLERANCE)',
        )
        if threads:
            parser.add_argument(
                '--threads',
                type=int,
                help='Worker threads (default: QJK_THREADS)',
            )

    def write_json(self, data):
        self.stdout.write(render_json(data))
