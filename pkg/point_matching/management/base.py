"""
Shared base for the point_matching management commands.

Usage:
    python manage.py <command> --config run.cfg --shape lshape --digits 30

Every command resolves Django settings, an optional config file and its
own flags into one RunConfig, then hands plain values to the engine.
"""
import logging
import math
from typing import Any, Dict

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from point_matching.core.errors import PointMatchingError
from point_matching.engine.catalog import descriptor, shape_for
from point_matching.services.run_config import RunConfig, load_config_file

logger = logging.getLogger('point_matching')

DEFAULT_SHAPE = 'lshape'
# Starting N when --nmin is not given
DEFAULT_NMIN = 10
# Steps of the schedule when --nmax is not given
DEFAULT_STEPS = 10

FLAG_KEYS = (
    'shape', 'class', 'bc', 'index', 'digits', 'eps', 'nmin', 'nmax', 'dn', 'mult',
    'points', 'threads', 'out', 'resume', 'lambda_min', 'lambda_max', 'sides', 'grid',
    'scale', 'refine', 'dump_matrix', 'unfold', 'pattern', 'gamma_algorithm',
)


class PointMatchingCommand(BaseCommand):
    """
    Base class for point_matching commands.

    Subclasses implement ``run(config, **options)``; errors from the
    library become a CommandError carrying the error family's exit code.
    """

    def add_arguments(self, parser):
        parser.add_argument('--config', help='Flat key = value config file')
        parser.add_argument('--shape', help='lshape, cutsquare, star or polygon<σ>')
        parser.add_argument('--class', dest='class', help='Symmetry class')
        parser.add_argument('--bc', help='dirichlet or neumann')
        parser.add_argument('--index', type=int, help='Eigenvalue index within the class (1-based)')
        parser.add_argument('--digits', type=int, help='Target digits / minimum working precision')
        parser.add_argument('--eps', help='Target relative gap of the bound')
        parser.add_argument('--nmin', type=int, help='First N of the schedule')
        parser.add_argument('--nmax', type=int, help='Last N of the schedule')
        parser.add_argument('--dn', type=int, help='Increment of N')
        parser.add_argument('--mult', help='Precision multiplier (digits per matching condition)')
        parser.add_argument('--points', help='Matching-point distribution')
        parser.add_argument('--threads', type=int, help='Worker threads')
        parser.add_argument('--out', help='Output file')
        parser.add_argument('--resume', action='store_true', default=None, help='Resume from checkpoint')
        parser.add_argument('--lambda-min', dest='lambda_min', help='Lower end of the λ range')
        parser.add_argument('--lambda-max', dest='lambda_max', help='Upper end of the λ range')
        parser.add_argument('--sides', type=int, help='Number of polygon sides')
        parser.add_argument('--grid', type=int, help='Grid resolution')
        parser.add_argument('--scale', help='unit_edge or area_pi')
        parser.add_argument('--refine', action='store_true', default=None, help='Refine sweep brackets')
        parser.add_argument('--dump-matrix', dest='dump_matrix', help='Write the final matrix here')
        parser.add_argument('--unfold', action='store_true', default=None, help='Export the full shape')
        parser.add_argument('--pattern', type=int, help='Coefficient pattern report over K modes')
        parser.add_argument('--gamma-algorithm', dest='gamma_algorithm', help='library or spouge')

    def handle(self, *args, **options):
        if options.get('verbosity', 1) >= 2:
            logger.setLevel(logging.DEBUG)
        try:
            config = self.resolve_config(options)
            self.run(config, **{k: v for k, v in options.items() if k != 'config'})
        except PointMatchingError as e:
            message = f'{type(e).__name__}: {e}'
            self.stderr.write(self.style.ERROR(message))
            raise CommandError(message, returncode=e.exit_code)

    def run(self, config: RunConfig, **options):
        raise NotImplementedError('subclasses of PointMatchingCommand must provide a run() method')

    def resolve_config(self, options: Dict[str, Any]) -> RunConfig:
        defaults = getattr(settings, 'POINT_MATCHING', {})
        file_values = load_config_file(options['config']) if options.get('config') else {}
        flags = {key: options.get(key) for key in FLAG_KEYS}
        return RunConfig.resolve(defaults, file_values, flags)

    # -- helpers shared by the bound and sweep commands --

    def default_class(self, config: RunConfig) -> str:
        """--class, else the first cataloged class of the shape for the boundary kind."""
        if config.class_id:
            return config.class_id
        shape = shape_for(config.shape or DEFAULT_SHAPE, scale=config.scale or 'unit_edge')
        wanted = config.bc.strip().lower()[:1]
        for class_id, kind in shape.classes():
            if kind.value[:1] == wanted:
                return class_id
        return shape.classes()[0][0]

    def build_descriptor(self, config: RunConfig, ctx):
        return descriptor(
            config.shape or DEFAULT_SHAPE,
            self.default_class(config),
            config.bc,
            ctx,
            scale=config.scale or 'unit_edge',
            distribution=config.points,
        )

    @staticmethod
    def first_N(config: RunConfig, desc) -> int:
        """--nmin, else the smallest admissible N at or above DEFAULT_NMIN."""
        if config.nmin is not None:
            return config.nmin
        start = max(desc.N_min, DEFAULT_NMIN)
        return math.ceil(start / desc.N_multiple) * desc.N_multiple
