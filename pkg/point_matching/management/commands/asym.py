"""
Django management command to evaluate the large-σ expansion of the lowest
Dirichlet eigenvalue of a regular polygon.

Usage:
    python manage.py asym --sides 256 --digits 20
    python manage.py asym --sides 7 --scale unit_edge
"""
from point_matching.core.errors import ConfigError
from point_matching.engine.solver import asymptotic_lambda1
from point_matching.management.base import PointMatchingCommand


class Command(PointMatchingCommand):
    help = 'Evaluates the 1/σ expansion of the lowest regular-polygon eigenvalue'

    def run(self, config, **options):
        if config.sides is None:
            raise ConfigError('asym needs --sides')
        ctx = config.base_context()
        mp = ctx.mp
        value = asymptotic_lambda1(config.sides, ctx)
        scale = config.scale or 'area_pi'
        if scale == 'unit_edge':
            sigma = mp.mpf(config.sides)
            area = sigma / (4 * mp.tan(mp.pi / sigma))
            value = ctx.report(ctx.mpf(value) * mp.pi / area)
        self.stdout.write(value.to_string())
