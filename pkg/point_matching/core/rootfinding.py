"""
Bracketed secant iteration shared by the Bessel-zero finder and the
determinant root refiner.
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable

from point_matching.core.errors import ConvergenceError

logger = logging.getLogger(__name__)


@dataclass
class SecantResult:
    """Outcome of a bracketed secant search."""
    root: Any
    lower: Any
    upper: Any
    evaluations: int
    iterations: int


def secant_bisection(
    f: Callable,
    a, b, fa, fb,
    digits: int,
    mp,
    max_iterations: int = 200,
    full_output: bool = False,
):
    """
    Refine a sign-change bracket [a, b] of ``f``.

    Secant steps use the two most recent iterates; a step that leaves the
    current bracket is replaced by bisection. Iteration stops when two
    successive iterates agree to ``digits`` significant digits.

    Args:
        f: Function returning a signed mpf
        a, b: Bracket with fa * fb < 0
        fa, fb: Function values at the bracket ends
        digits: Requested agreement in significant digits
        mp: mpmath context used for the iteration
        max_iterations: Iteration cap
        full_output: Return a SecantResult instead of the root

    Returns:
        The root, or a SecantResult when ``full_output`` is set
    """
    if fa == 0:
        return SecantResult(a, a, a, 0, 0) if full_output else a
    if fb == 0:
        return SecantResult(b, b, b, 0, 0) if full_output else b
    if (fa > 0) == (fb > 0):
        raise ConvergenceError("Bracket ends have the same sign")

    a, b, fa, fb = mp.mpf(a), mp.mpf(b), mp.mpf(fa), mp.mpf(fb)
    tol = mp.mpf(10) ** (-digits)
    x0, f0, x1, f1 = a, fa, b, fb
    evaluations = 0

    for iteration in range(1, max_iterations + 1):
        if f1 != f0:
            x = x1 - f1 * (x1 - x0) / (f1 - f0)
        else:
            x = (a + b) / 2
        if not (a < x < b):
            x = (a + b) / 2
        fx = mp.mpf(f(x))
        evaluations += 1

        if fx == 0:
            a = b = x
        elif (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx

        done = fx == 0 or abs(x - x1) <= tol * abs(x) or (b - a) <= tol * abs(x)
        if done:
            logger.debug(f"Secant converged after {iteration} iterations")
            if full_output:
                return SecantResult(x, a, b, evaluations, iteration)
            return x
        x0, f0, x1, f1 = x1, f1, x, fx

    raise ConvergenceError(f"Secant iteration did not converge in {max_iterations} steps")
