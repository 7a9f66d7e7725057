"""
Django management command to bound one eigenvalue of a cataloged class.

Usage:
    python manage.py solve --shape lshape --digits 30
    python manage.py solve --shape cutsquare --class A --bc neumann --index 2 --nmax 60
    python manage.py solve --config runs/star_s.cfg --resume

Writes a ResultRecord as JSON and prints the N history with the bound.
"""
import time
from pathlib import Path

from point_matching.constants import DEFAULT_CHECKPOINT_NAME, DEFAULT_RESULT_NAME, WAVELENGTH_FRACTION
from point_matching.core.result import IncrementSchedule, ResultRecord
from point_matching.engine.driver import BoundDriver, seed_bracket
from point_matching.engine.geometry import wavelength_gap_check
from point_matching.engine.solver import DeterminantFunction
from point_matching.management.base import DEFAULT_STEPS, PointMatchingCommand, logger
from point_matching.services.artifacts import output_path, write_matrix, write_result
from point_matching.services.checkpoint import CheckpointStore
from point_matching.services.reports import bound_report


class Command(PointMatchingCommand):
    """
    Runs the bound driver over an increment schedule and records the
    tightest confirmed bound.
    """

    help = 'Computes a two-sided bound for one eigenvalue of a cataloged shape class'

    def run(self, config, **options):
        started = time.time()
        sizing = self.build_descriptor(config, config.base_context())
        if sizing.partner_of:
            logger.info(f"{sizing.label} is degenerate with {sizing.partner_of}; both share one kite determinant")

        N_start = self.first_N(config, sizing)
        delta_N = config.dn or sizing.delta_N
        N_max = config.nmax or N_start + DEFAULT_STEPS * delta_N
        schedule = IncrementSchedule(N_start, delta_N, N_max)
        ctx = config.precision_for(N_max, sizing.precision_multiplier)
        desc = self.build_descriptor(config, ctx)
        desc.check_N(N_start)
        self.stdout.write(
            f'Bounding {desc.label} index {config.index}: N={N_start}..{N_max} step {delta_N}, '
            f'{ctx.working_digits} digits'
        )

        checkpoint = None
        if config.resume or config.checkpoint_dir:
            name = DEFAULT_CHECKPOINT_NAME.format(
                shape=desc.shape_id, class_id=desc.class_id, bc=desc.boundary_kind.value, index=config.index,
            )
            run_label = f'{desc.label} index={config.index} N={N_start}..{N_max}/{delta_N} P={ctx.working_digits}'
            path = Path(config.checkpoint_dir or config.output_dir or '.') / name
            checkpoint = CheckpointStore(path, run_label, resume=bool(config.resume))

        seed = seed_bracket(
            desc, config.index, N_start, ctx,
            lambda_min=config.lambda_min, lambda_max=config.lambda_max, threads=config.threads,
        )
        # Target: --eps, else the requested digit count
        target = config.eps if config.eps is not None else ctx.mp.mpf(10) ** -config.digits
        driver = BoundDriver(desc, schedule, ctx, target_epsilon=target,
                             threads=config.threads, checkpoint=checkpoint)
        bound = driver.run(seed)

        final_N, final_lambda = bound.history[-1]
        det_fn = DeterminantFunction(desc, final_N, ctx)
        wavelength_gap_check(det_fn.matching_points(), final_lambda, ctx, WAVELENGTH_FRACTION)
        if config.dump_matrix:
            write_matrix(config.dump_matrix, det_fn.matrix(final_lambda), ctx.mp)
            self.stdout.write(f'Matrix at N={final_N} written to {config.dump_matrix}')

        record = ResultRecord.from_bound(
            bound,
            shape=desc.shape_id,
            class_id=desc.class_id,
            boundary_kind=desc.boundary_kind.value,
            index=config.index,
            working_precision=ctx.working_digits,
            wall_seconds=time.time() - started,
        )
        target_path = output_path(
            DEFAULT_RESULT_NAME.format(
                shape=desc.shape_id, class_id=desc.class_id, bc=desc.boundary_kind.value, index=config.index,
            ),
            config.out, config.output_dir,
        )
        write_result(target_path, record)

        self.stdout.write(bound_report(record.to_dict(), bound.to_dict()['history']), ending='')
        self.stdout.write(self.style.SUCCESS(f'{record.bound_string} written to {target_path}'))
