"""
Determinant Root Solver

Sign and log-magnitude of the point-matching determinant, sign-change
bracketing over a λ grid, bracketed secant refinement, the precision
rule of thumb and the large-σ regular-polygon expansion.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from threading import Lock
from typing import Any, Callable, List, Optional, Sequence

import mpmath

from point_matching.core.errors import ConfigError, PrecisionError
from point_matching.core.precision import (
    MIN_PRECISION,
    BesselEvaluator,
    BigReal,
    PrecisionContext,
    bessel_j_zero,
    zeta,
)
from point_matching.core.result import DetValue, RootEstimate
from point_matching.core.rootfinding import secant_bisection
from point_matching.engine.assembly import PointMatchMatrix, assemble
from point_matching.engine.geometry import wavelength_gap_check

logger = logging.getLogger(__name__)

# Weyl-density safety factor for the sweep step
WEYL_SAFETY = Fraction(1, 4)
# Default refinement target relative to the requested digits
REFINE_FACTOR = Fraction(6, 5)


def lu_decompose(entries: Sequence[Sequence[Any]], mp):
    """
    In-place style Gaussian elimination with partial pivoting.

    Returns:
        (lu, permutation, swaps, singular) where lu holds U on and above
        the diagonal and the multipliers below it
    """
    n = len(entries)
    lu = [[mp.mpf(v) for v in row] for row in entries]
    perm = list(range(n))
    swaps = 0
    singular = False
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(lu[i][k]))
        if lu[pivot_row][k] == 0:
            singular = True
            continue
        if pivot_row != k:
            lu[k], lu[pivot_row] = lu[pivot_row], lu[k]
            perm[k], perm[pivot_row] = perm[pivot_row], perm[k]
            swaps += 1
        pivot = lu[k][k]
        for i in range(k + 1, n):
            factor = lu[i][k] / pivot
            lu[i][k] = factor
            if factor:
                row_i, row_k = lu[i], lu[k]
                for j in range(k + 1, n):
                    row_i[j] -= factor * row_k[j]
    return lu, perm, swaps, singular


def det_sign(matrix, mp=None) -> DetValue:
    """
    Sign and log10|det| of a square matrix.

    Pivot signs and log-magnitudes are accumulated so the result never
    overflows. An exact zero pivot gives sign 0.

    Args:
        matrix: PointMatchMatrix or a list of rows
        mp: mpmath context (defaults to mpmath's global context for plain lists)
    """
    if isinstance(matrix, PointMatchMatrix):
        entries = matrix.entries
    else:
        entries = matrix
    mp = mp or mpmath.mp
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise ConfigError("det_sign needs a square matrix")
    lu, _, swaps, singular = lu_decompose(entries, mp)
    if singular:
        return DetValue(0, -mp.inf)
    sign = -1 if swaps % 2 else 1
    log_magnitude = mp.zero
    for k in range(n):
        pivot = lu[k][k]
        if pivot < 0:
            sign = -sign
        log_magnitude += mp.log10(abs(pivot))
    return DetValue(sign, log_magnitude)


class DeterminantFunction:
    """
    λ -> DetValue for one descriptor at fixed N.

    The row plan and Bessel Γ cache are shared by every evaluation; the
    evaluation counter is safe to update from worker threads.
    """

    def __init__(self, descriptor, N: int, ctx: PrecisionContext, threads: int = 1,
                 normalize_columns: bool = False):
        self.descriptor = descriptor
        self.N = N
        self.ctx = ctx
        self.threads = threads
        self.normalize_columns = normalize_columns
        self.plan = descriptor.row_plan(N)
        self.bessel = BesselEvaluator(ctx)
        self.evaluations = 0
        self._lock = Lock()

    def matrix(self, lam, threads: Optional[int] = None) -> PointMatchMatrix:
        return assemble(
            self.descriptor, self.N, lam, self.ctx,
            threads=self.threads if threads is None else threads,
            normalize_columns=self.normalize_columns,
            row_plan=self.plan,
            bessel=self.bessel,
        )

    def evaluate(self, lam, threads: Optional[int] = None) -> DetValue:
        value = det_sign(self.matrix(lam, threads), self.ctx.mp)
        with self._lock:
            self.evaluations += 1
        return value

    def __call__(self, lam) -> DetValue:
        return self.evaluate(lam)

    def matching_points(self):
        """Matching points in distribution order (vertex conditions excluded)."""
        matching, _ = self.descriptor.matching(self.N)
        return matching.points


@dataclass
class Bracket:
    """Interval [lower, upper] with opposite determinant signs (equal ends mean an exact zero)."""
    lower: Any
    upper: Any
    det_lower: DetValue
    det_upper: DetValue

    @property
    def midpoint(self):
        return (self.lower + self.upper) / 2


def weyl_step(descriptor, safety=WEYL_SAFETY):
    """safety·4π/Area, a fraction of the mean eigenvalue spacing of the class."""
    mp = descriptor.ctx.mp
    return mp.mpf(safety.numerator) / safety.denominator * 4 * mp.pi / descriptor.weyl_area


def bracket_roots(
    det_fn: Callable,
    lambda_min,
    lambda_max,
    step,
    ctx: PrecisionContext,
    threads: int = 1,
) -> List[Bracket]:
    """
    All determinant sign changes over an evenly spaced λ grid.

    Args:
        det_fn: λ -> DetValue
        lambda_min, lambda_max: Range; a zero lower end starts the grid at step/4
        step: Grid spacing
        ctx: Precision context
        threads: Grid points evaluated concurrently

    Returns:
        Brackets in increasing λ (possibly empty)
    """
    mp = ctx.mp
    lo, hi, step = ctx.mpf(lambda_min), ctx.mpf(lambda_max), ctx.mpf(step)
    if step <= 0:
        raise ConfigError("Sweep step must be positive")
    if lo < 0 or hi <= lo:
        raise ConfigError(f"Invalid λ range [{mp.nstr(lo, 8)}, {mp.nstr(hi, 8)}]")
    start = lo if lo > 0 else step / 4
    count = int(mp.floor((hi - start) / step))
    grid = [start + i * step for i in range(count + 1)]
    if grid[-1] < hi:
        grid.append(hi)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            values = list(executor.map(det_fn, grid))
    else:
        values = [det_fn(lam) for lam in grid]

    brackets = []
    for (a, fa), (b, fb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if fa.sign == 0:
            brackets.append(Bracket(a, a, fa, fa))
        elif fb.sign != 0 and fa.sign != fb.sign:
            brackets.append(Bracket(a, b, fa, fb))
    if values[-1].sign == 0:
        brackets.append(Bracket(grid[-1], grid[-1], values[-1], values[-1]))
    logger.info(
        f"Sweep [{mp.nstr(start, 8)}, {mp.nstr(hi, 8)}] step {mp.nstr(step, 6)}: "
        f"{len(grid)} points, {len(brackets)} sign changes"
    )
    return brackets


def sweep(
    descriptor,
    N: int,
    lambda_min,
    lambda_max,
    ctx: PrecisionContext,
    step=None,
    threads: int = 1,
    det_fn: Optional[DeterminantFunction] = None,
) -> List[Bracket]:
    """bracket_roots for a descriptor with the Weyl step and a wavelength check at λ_max."""
    det_fn = det_fn or DeterminantFunction(descriptor, N, ctx)
    step = weyl_step(descriptor) if step is None else ctx.mpf(step)
    wavelength_gap_check(det_fn.matching_points(), lambda_max, ctx)
    return bracket_roots(det_fn, lambda_min, lambda_max, step, ctx, threads=threads)


def refine_root(
    det_fn: Callable,
    bracket: Bracket,
    target_digits: int,
    ctx: PrecisionContext,
    N: int = 0,
    max_iterations: int = 200,
) -> RootEstimate:
    """
    Refine a bracket with the secant/bisection iteration.

    Args:
        det_fn: λ -> DetValue
        bracket: Sign-change bracket
        target_digits: Agreement required between successive iterates
        ctx: Precision context
        N: Matching conditions (recorded on the estimate)

    Returns:
        RootEstimate at working precision
    """
    mp = ctx.mp
    if target_digits > ctx.working_digits:
        raise PrecisionError(
            f"Target of {target_digits} digits exceeds working precision {ctx.working_digits}"
        )
    calls = [0]

    def signed(lam):
        calls[0] += 1
        return det_fn(lam).as_mpf(mp)

    if bracket.lower == bracket.upper:
        value = ctx.report(bracket.lower)
        return RootEstimate(value, N, (value, value), target_digits, 0)

    result = secant_bisection(
        signed,
        bracket.lower, bracket.upper,
        bracket.det_lower.as_mpf(mp), bracket.det_upper.as_mpf(mp),
        target_digits, mp,
        max_iterations=max_iterations,
        full_output=True,
    )
    logger.debug(f"Refined N={N} root {mp.nstr(result.root, 20)} in {calls[0]} evaluations")
    return RootEstimate(
        lambda_value=ctx.report(result.root),
        N=N,
        bracket=(ctx.report(result.lower), ctx.report(result.upper)),
        refined_digits=target_digits,
        det_evaluations=calls[0],
    )


def working_precision(N: int, multiplier=Fraction(6, 5)) -> int:
    """ceil(multiplier·N) working digits, at least the supported minimum."""
    if N < 1:
        raise ConfigError("N must be >= 1")
    multiplier = Fraction(multiplier).limit_denominator(1000)
    if multiplier < 1:
        raise ConfigError("The precision multiplier must be >= 1")
    return max(MIN_PRECISION, math.ceil(multiplier * N))


def refine_target(digits: int) -> int:
    """Iterate agreement for a D-digit bound: about 1.2·D."""
    return math.ceil(REFINE_FACTOR * digits)


def asymptotic_lambda1(sigma: int, ctx: PrecisionContext) -> BigReal:
    """
    Lowest Dirichlet eigenvalue of the area-π regular σ-gon from its
    expansion in 1/σ:

        j²·[1 + 4ζ(3)/σ³ + (12 - 2j²)ζ(5)/σ⁵ + (8 + 4j²)ζ(3)²/σ⁶],  j = j_{0,1}
    """
    if sigma < 3:
        raise ConfigError(f"σ must be >= 3, got {sigma}")
    mp = ctx.mp
    j2 = ctx.mpf(bessel_j_zero(0, 1, ctx)) ** 2
    z3 = ctx.mpf(zeta(3, ctx))
    z5 = ctx.mpf(zeta(5, ctx))
    s = mp.mpf(sigma)
    series = 1 + 4 * z3 / s ** 3 + (12 - 2 * j2) * z5 / s ** 5 + (8 + 4 * j2) * z3 ** 2 / s ** 6
    return ctx.report(j2 * series)
