"""
Django management command to locate determinant sign changes over a λ range.

Usage:
    python manage.py sweep --shape cutsquare --class A --lambda-max 120 --nmin 20
    python manage.py sweep --shape star --class S --lambda-max 100 --refine
"""
from point_matching.core.errors import ConfigError
from point_matching.engine.solver import DeterminantFunction, refine_root, sweep
from point_matching.management.base import PointMatchingCommand
from point_matching.services.artifacts import write_text_atomic
from point_matching.services.reports import sweep_report

BRACKET_DIGITS = 15


class Command(PointMatchingCommand):
    help = 'Lists sign-change brackets of the point-matching determinant for one class'

    def run(self, config, **options):
        if config.lambda_max is None:
            raise ConfigError('sweep needs --lambda-max')
        sizing = self.build_descriptor(config, config.base_context())
        N = self.first_N(config, sizing)
        ctx = config.precision_for(N, sizing.precision_multiplier)
        desc = self.build_descriptor(config, ctx)
        mp = ctx.mp

        det_fn = DeterminantFunction(desc, N, ctx)
        brackets = sweep(desc, N, config.lambda_min or 0, config.lambda_max, ctx,
                         threads=config.threads, det_fn=det_fn)
        rows = []
        for bracket in brackets:
            row = {
                'lower': mp.nstr(bracket.lower, BRACKET_DIGITS),
                'upper': mp.nstr(bracket.upper, BRACKET_DIGITS),
                'refined': None,
            }
            if config.refine:
                root = refine_root(det_fn, bracket, ctx.working_digits, ctx, N)
                row['refined'] = root.lambda_value.to_string()
            rows.append(row)

        report = sweep_report(desc.label, N, rows)
        self.stdout.write(report, ending='')
        if config.out:
            write_text_atomic(config.out, report)
            self.stdout.write(self.style.SUCCESS(f'Sweep written to {config.out}'))
