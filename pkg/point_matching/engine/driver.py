"""
Bound Driver

Follows one root of the point-matching determinant through a properly
incremented set of N values and reads a two-sided eigenvalue bound from
the alternation of the estimates λ^[N].
"""
import logging
import time
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

from point_matching.core.bounds import convergence_rate, digit_count, relative_gap
from point_matching.core.errors import (
    ConfigError,
    ConvergenceError,
    LostRootError,
    NoAlternationError,
)
from point_matching.core.precision import BigReal, PrecisionContext
from point_matching.core.result import BoundResult, IncrementSchedule, RootEstimate
from point_matching.engine.solver import (
    Bracket,
    DeterminantFunction,
    refine_root,
    sweep,
    weyl_step,
)

logger = logging.getLogger(__name__)

MAXIMUM = 'max'
MINIMUM = 'min'

# Largest tracking window as a multiple of the initial one
WINDOW_GROWTH_LIMIT = 64


@dataclass(frozen=True)
class Extremum:
    """A strict local extremum of the root history."""
    position: int
    N: int
    value: Any
    kind: str


def find_extrema(history: Sequence[Tuple[int, Any]]) -> List[Extremum]:
    """Points strictly above (or below) both neighbours, in history order."""
    extrema = []
    for i in range(1, len(history) - 1):
        prev_value, (n, value), next_value = history[i - 1][1], history[i], history[i + 1][1]
        if value > prev_value and value > next_value:
            extrema.append(Extremum(i, n, value, MAXIMUM))
        elif value < prev_value and value < next_value:
            extrema.append(Extremum(i, n, value, MINIMUM))
    return extrema


@dataclass
class BoundCandidate:
    """An adjacent (minimum, maximum) pair of extrema."""
    low: Extremum
    high: Extremum
    confirmed: bool

    @property
    def last_position(self) -> int:
        return max(self.low.position, self.high.position)


def bound_candidates(extrema: Sequence[Extremum]) -> List[BoundCandidate]:
    """
    Adjacent min/max pairs with min < max.

    A pair is confirmed once a later maximum and a later minimum both fall
    inside [min, max].
    """
    candidates = []
    for first, second in zip(extrema, extrema[1:]):
        if first.kind == second.kind:
            continue
        low, high = (first, second) if first.kind == MINIMUM else (second, first)
        if not low.value < high.value:
            continue
        later = [e for e in extrema if e.position > second.position]
        confirmed = (
            any(e.kind == MAXIMUM and low.value <= e.value <= high.value for e in later)
            and any(e.kind == MINIMUM and low.value <= e.value <= high.value for e in later)
        )
        candidates.append(BoundCandidate(low, high, confirmed))
    return candidates


def make_bound(candidate: BoundCandidate, history, ctx: PrecisionContext) -> BoundResult:
    mp = ctx.mp
    lo, hi = ctx.mpf(candidate.low.value), ctx.mpf(candidate.high.value)
    epsilon = relative_gap(lo, hi, mp)
    digits = digit_count(epsilon, mp)
    rho = convergence_rate(digits, candidate.low.N, candidate.high.N, mp)
    return BoundResult(
        lambda_lo=ctx.report(lo),
        lambda_hi=ctx.report(hi),
        N_down=candidate.low.N,
        N_up=candidate.high.N,
        epsilon=ctx.report(epsilon),
        digits_D=ctx.report(digits),
        rho=ctx.report(rho),
        history=[(n, value if isinstance(value, BigReal) else ctx.report(value)) for n, value in history],
    )


def track_root(det_fn, estimate, initial_half_width, mp) -> Bracket:
    """
    Sign-change bracket around ``estimate``, doubling the half-width up to
    WINDOW_GROWTH_LIMIT times its first value.

    Raises:
        LostRootError: No sign change inside the largest window
    """
    half_width = initial_half_width
    limit = initial_half_width * WINDOW_GROWTH_LIMIT
    while half_width <= limit:
        lo, hi = estimate - half_width, estimate + half_width
        if lo <= 0:
            lo = estimate / 2
        det_lo, det_hi = det_fn(lo), det_fn(hi)
        if det_lo.sign == 0:
            return Bracket(lo, lo, det_lo, det_lo)
        if det_hi.sign == 0:
            return Bracket(hi, hi, det_hi, det_hi)
        if det_lo.sign != det_hi.sign:
            return Bracket(lo, hi, det_lo, det_hi)
        half_width *= 2
    raise LostRootError(
        f"No root of N={getattr(det_fn, 'N', '?')} within ±{mp.nstr(limit, 6)} of λ={mp.nstr(estimate, 15)}"
    )


def bound_from_history(history: Sequence[Tuple[int, Any]], ctx: PrecisionContext) -> BoundResult:
    """
    Tightest confirmed bound readable from a finished history.

    Raises:
        NoAlternationError: No adjacent minimum/maximum pair exists, or none
            has been confirmed by a later maximum and minimum
    """
    mp = ctx.mp
    candidates = bound_candidates(find_extrema(history))
    confirmed = [c for c in candidates if c.confirmed]
    if not confirmed:
        if candidates:
            raise NoAlternationError(
                f"Alternation seen but never confirmed through N={history[-1][0]}; extend N_max"
            )
        raise NoAlternationError("The λ^[N] sequence does not alternate")
    best = min(confirmed, key=lambda c: relative_gap(c.low.value, c.high.value, mp))
    return make_bound(best, history, ctx)


class BoundDriver:
    """
    Drives λ^[N] over an increment schedule.

    Each step tracks the root nearest the previous estimate inside a
    window of relative half-width 10^-max(2, D/2), where D is the digit
    count of the current bound, doubling the window up to a fixed limit.

    Features:
    - Checkpoint replay and append-only recording
    - Confirmed extremum pairs before a bound is accepted
    - Early stop once the relative gap falls below the target
    """

    def __init__(
        self,
        descriptor,
        schedule: IncrementSchedule,
        ctx: PrecisionContext,
        target_epsilon=None,
        threads: int = 1,
        checkpoint=None,
        refine_digits: Optional[int] = None,
        normalize_columns: bool = False,
    ):
        if schedule.delta_N % descriptor.delta_N:
            raise ConfigError(
                f"ΔN={schedule.delta_N} is not a proper increment for {descriptor.label} "
                f"(multiple of {descriptor.delta_N} required)"
            )
        self.descriptor = descriptor
        self.schedule = schedule
        self.ctx = ctx
        self.target_epsilon = ctx.mpf(target_epsilon) if target_epsilon is not None else None
        self.threads = threads
        self.checkpoint = checkpoint
        self.refine_digits = refine_digits or ctx.working_digits
        self.normalize_columns = normalize_columns
        self.history: List[Tuple[int, BigReal]] = []
        self.estimates: List[RootEstimate] = []
        self.det_evaluations = 0

    def _replay(self) -> None:
        if self.checkpoint is None:
            return
        for record in self.checkpoint.records():
            if record.precision != self.ctx.working_digits:
                raise ConfigError(
                    f"Checkpoint written at {record.precision} digits, run uses {self.ctx.working_digits}"
                )
            self.history.append((record.N, BigReal.from_string(record.lambda_value, record.precision)))
            self.det_evaluations += record.det_evaluations
        if self.history:
            logger.info(f"Resumed {len(self.history)} checkpointed steps (last N={self.history[-1][0]})")

    def _current_digits(self):
        mp = self.ctx.mp
        if len(self.history) < 2:
            return mp.zero
        candidates = bound_candidates(find_extrema(self.history))
        if candidates:
            last = candidates[-1]
            return digit_count(relative_gap(last.low.value, last.high.value, mp), mp)
        a, b = self.history[-2][1], self.history[-1][1]
        gap = abs(relative_gap(a, b, mp))
        return digit_count(gap, mp) if gap > 0 else mp.mpf(self.ctx.working_digits)

    def run(self, seed) -> BoundResult:
        """
        Run the schedule from a seed bracket or a seed value.

        Args:
            seed: Bracket from a sweep, or an approximate eigenvalue

        Returns:
            BoundResult
        """
        mp = self.ctx.mp
        started = time.time()
        self._replay()
        done = {n for n, _ in self.history}

        if isinstance(seed, Bracket):
            estimate = seed.midpoint
            seed_half_width = max((seed.upper - seed.lower) / 2, abs(estimate) * mp.mpf(10) ** -6)
        else:
            estimate = self.ctx.mpf(seed)
            seed_half_width = abs(estimate) * mp.mpf(10) ** -2
        if self.history:
            estimate = self.ctx.mpf(self.history[-1][1])

        for N in self.schedule.values():
            if N in done:
                continue
            det_fn = DeterminantFunction(self.descriptor, N, self.ctx, threads=self.threads,
                                         normalize_columns=self.normalize_columns)
            if self.history:
                relative = mp.mpf(10) ** -max(2, self._current_digits() / 2)
                half_width = min(relative * abs(estimate), seed_half_width)
            else:
                half_width = seed_half_width
            bracket = track_root(det_fn, estimate, half_width, mp)
            root = refine_root(det_fn, bracket, self.refine_digits, self.ctx, N)
            self.det_evaluations += det_fn.evaluations
            self.estimates.append(root)
            self.history.append((N, root.lambda_value))
            estimate = self.ctx.mpf(root.lambda_value)
            if self.checkpoint is not None:
                self.checkpoint.append(N, root.lambda_value.to_string(), det_fn.evaluations,
                                       self.ctx.working_digits)
            logger.info(f"{self.descriptor.label} N={N}: λ={mp.nstr(estimate, 25)}")

            if self.target_epsilon is not None:
                confirmed = [c for c in bound_candidates(find_extrema(self.history)) if c.confirmed]
                if confirmed:
                    best = bound_from_history(self.history, self.ctx)
                    if self.ctx.mpf(best.epsilon) < self.target_epsilon:
                        logger.info(f"Target ε reached at N={N}: {best.bound_string}")
                        return best

        result = bound_from_history(self.history, self.ctx)
        logger.info(
            f"Bound {result.bound_string} (D={mp.nstr(self.ctx.mpf(result.digits_D), 4)}, "
            f"N_down={result.N_down}, N_up={result.N_up}) in {time.time() - started:.1f}s"
        )
        return result


def seed_bracket(
    descriptor,
    index: int,
    N: int,
    ctx: PrecisionContext,
    lambda_min=None,
    lambda_max=None,
    threads: int = 1,
    max_expansions: int = 6,
) -> Bracket:
    """
    Bracket of the index-th root (1-based) from a sweep at N.

    Without an explicit upper end the sweep range starts near the Weyl
    estimate for the index and doubles until enough roots are found.
    """
    if index < 1:
        raise ConfigError("Eigenvalue index must be >= 1")
    mp = ctx.mp
    det_fn = DeterminantFunction(descriptor, N, ctx)
    low = ctx.mpf(lambda_min) if lambda_min is not None else mp.zero
    if lambda_max is not None:
        brackets = sweep(descriptor, N, low, lambda_max, ctx, threads=threads, det_fn=det_fn)
    else:
        upper = low + (index + 2) * 4 * weyl_step(descriptor)
        brackets = []
        for _ in range(max_expansions):
            brackets = sweep(descriptor, N, low, upper, ctx, threads=threads, det_fn=det_fn)
            if len(brackets) >= index:
                break
            upper *= 2
    if len(brackets) < index:
        raise ConvergenceError(f"Only {len(brackets)} roots found; cannot seed index {index}")
    chosen = brackets[index - 1]
    logger.info(
        f"Seed for index {index}: [{mp.nstr(chosen.lower, 12)}, {mp.nstr(chosen.upper, 12)}] at N={N}"
    )
    return chosen


def bound_driver(
    descriptor,
    seed,
    schedule: IncrementSchedule,
    target_epsilon,
    ctx: PrecisionContext,
    **kwargs,
) -> BoundResult:
    """
    Functional entry point.

    Args:
        descriptor: ShapeClassDescriptor
        seed: Eigenvalue index (int), Bracket, or approximate eigenvalue
        schedule: Increment schedule
        target_epsilon: Stop once the relative gap is below this (None: run to N_max)
        ctx: Precision context
        **kwargs: Passed to BoundDriver
    """
    if isinstance(seed, int) and not isinstance(seed, bool):
        seed = seed_bracket(descriptor, seed, schedule.N_start, ctx, threads=kwargs.get('threads', 1))
    return BoundDriver(descriptor, schedule, ctx, target_epsilon, **kwargs).run(seed)
