"""
Django management command to export an eigenfunction on a grid.

Usage:
    python manage.py eigfun --shape lshape --nmin 24 --grid 64
    python manage.py eigfun --shape polygon6 --class B_o --nmin 20 --unfold
    python manage.py eigfun --shape cutsquare --class full --nmin 35 --pattern 6

The grid file has one ``x y value`` line per raster point, blank values
outside the shape.
"""
from point_matching.core.errors import ConvergenceError
from point_matching.engine.driver import seed_bracket
from point_matching.engine.eigenfunction import (
    boundary_residual,
    coefficient_pattern_report,
    grid_export,
    solve_coefficients,
)
from point_matching.engine.solver import DeterminantFunction, refine_root, sweep, weyl_step
from point_matching.management.base import PointMatchingCommand
from point_matching.services.artifacts import output_path, write_grid
from point_matching.services.reports import pattern_report

GRID_NAME = '{shape}_{class_id}_{bc}_{index}.grid'


class Command(PointMatchingCommand):
    help = 'Solves for the expansion coefficients at one eigenvalue and exports Ψ on a grid'

    def run(self, config, **options):
        sizing = self.build_descriptor(config, config.base_context())
        N = config.nmax or self.first_N(config, sizing)
        ctx = config.precision_for(N, sizing.precision_multiplier)
        desc = self.build_descriptor(config, ctx)
        mp = ctx.mp

        if config.pattern:
            self._pattern(config, desc, N, ctx)
            return

        det_fn = DeterminantFunction(desc, N, ctx)
        bracket = seed_bracket(desc, config.index, N, ctx, lambda_min=config.lambda_min,
                               lambda_max=config.lambda_max, threads=config.threads)
        root = refine_root(det_fn, bracket, ctx.working_digits, ctx, N)
        coeffs = solve_coefficients(desc, N, root.lambda_value, ctx, threads=config.threads)
        grid = grid_export(desc, coeffs, ctx, resolution=config.grid,
                           unfold=bool(config.unfold), threads=config.threads)
        path = output_path(
            GRID_NAME.format(shape=desc.shape_id, class_id=desc.class_id,
                             bc=desc.boundary_kind.value, index=config.index),
            config.out, config.output_dir,
        )
        write_grid(path, grid)
        residual = boundary_residual(desc, coeffs, ctx)

        self.stdout.write(f'λ^[{N}] = {root.lambda_value.to_string()}')
        self.stdout.write(f'boundary residual {mp.nstr(residual, 6)}')
        self.stdout.write(self.style.SUCCESS(f'Grid written to {path}'))

    def _pattern(self, config, desc, N, ctx):
        """Coefficient vectors of the lowest ``config.pattern`` modes and their shared zero patterns."""
        mp = ctx.mp
        count = config.pattern
        low = config.lambda_min or 0
        upper = (ctx.mpf(config.lambda_max) if config.lambda_max is not None
                 else ctx.mpf(low) + (count + 2) * 4 * weyl_step(desc))
        det_fn = DeterminantFunction(desc, N, ctx)
        brackets = sweep(desc, N, low, upper, ctx, threads=config.threads, det_fn=det_fn)
        if len(brackets) < count:
            raise ConvergenceError(f'Only {len(brackets)} roots below λ={mp.nstr(upper, 8)}; asked for {count}')
        vectors, labels = [], []
        for bracket in brackets[:count]:
            root = refine_root(det_fn, bracket, ctx.working_digits, ctx, N)
            vectors.append(solve_coefficients(desc, N, root.lambda_value, ctx, threads=config.threads))
            labels.append(mp.nstr(ctx.mpf(root.lambda_value), 12))
        report = coefficient_pattern_report(vectors, ctx)
        self.stdout.write(pattern_report(report, labels), ending='')
