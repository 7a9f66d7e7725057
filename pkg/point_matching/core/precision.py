"""
Precision Core

Arbitrary-precision reals and the special functions the point-matching
method needs: elementary functions, Gamma, Bessel J of real order,
Bessel zeros and Riemann zeta.

All arithmetic runs on mpmath. Each precision level gets its own
``MPContext`` so that contexts are never mutated after creation and can
be shared between threads.
"""
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Any, Callable, Dict, Tuple, Union

import mpmath

from point_matching.core.errors import ConvergenceError, DomainError, PrecisionError
from point_matching.core.rootfinding import secant_bisection

logger = logging.getLogger(__name__)

MIN_PRECISION = 10
MAX_PRECISION = 200000

_DECIMAL_PATTERN = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$')

Number = Union['BigReal', Any]


@lru_cache(maxsize=None)
def mp_for(digits: int) -> mpmath.MPContext:
    """
    Return a shared mpmath context fixed at ``digits`` decimal digits.

    The returned context must never have its precision changed.
    """
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def _check_precision(digits: int) -> None:
    if not isinstance(digits, int) or digits < MIN_PRECISION or digits > MAX_PRECISION:
        raise PrecisionError(
            f"Precision must be an integer in [{MIN_PRECISION}, {MAX_PRECISION}], got {digits!r}"
        )


def to_mpf(value: Number, mp: mpmath.MPContext):
    """Convert BigReal, Fraction, int, str or mpf to an mpf of ``mp``."""
    if isinstance(value, BigReal):
        return mp.mpf(value.value)
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    if isinstance(value, str):
        if not _DECIMAL_PATTERN.match(value.strip()):
            raise DomainError(f"Not a decimal number: {value!r}")
        return mp.mpf(value.strip())
    return mp.mpf(value)


@total_ordering
@dataclass(frozen=True, eq=False)
class BigReal:
    """
    Arbitrary-precision real with an explicit decimal working precision.

    Attributes:
        value: mpmath mpf holding at least ``precision`` digits
        precision: Decimal digits carried by this value
    """
    value: Any
    precision: int

    def __post_init__(self):
        _check_precision(self.precision)

    @classmethod
    def from_string(cls, text: str, precision: int) -> 'BigReal':
        """Parse a decimal string such as ``-1.25e-3``."""
        _check_precision(precision)
        return cls(to_mpf(text, mp_for(precision + 5)), precision)

    @classmethod
    def coerce(cls, value: Number, precision: int) -> 'BigReal':
        """Wrap any supported number at the given precision."""
        if isinstance(value, BigReal):
            return value
        _check_precision(precision)
        return cls(to_mpf(value, mp_for(precision + 5)), precision)

    def to_string(self) -> str:
        """Decimal string with exactly ``precision`` significant digits."""
        mp = mp_for(self.precision + 5)
        return mp.nstr(
            self.value, self.precision, strip_zeros=False,
            min_fixed=-20, max_fixed=self.precision + 1,
        )

    def _combine(self, other: Number, op: Callable) -> 'BigReal':
        if isinstance(other, BigReal):
            digits = min(self.precision, other.precision)
            rhs = other.value
        else:
            digits = self.precision
            rhs = other
        mp = mp_for(digits + 5)
        return BigReal(op(mp.mpf(self.value), to_mpf(rhs, mp)), digits)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._combine(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._combine(other, lambda a, b: b * a)

    def __truediv__(self, other):
        divisor = other.value if isinstance(other, BigReal) else other
        if divisor == 0:
            raise DomainError("Division by zero")
        return self._combine(other, lambda a, b: a / b)

    def __neg__(self):
        return BigReal(-self.value, self.precision)

    def __abs__(self):
        return BigReal(abs(self.value), self.precision)

    def __eq__(self, other):
        rhs = other.value if isinstance(other, BigReal) else other
        return self.value == rhs

    def __lt__(self, other):
        rhs = other.value if isinstance(other, BigReal) else other
        return self.value < rhs

    def __hash__(self):
        return hash((self.value, self.precision))

    def __float__(self):
        return float(self.value)

    def __str__(self):
        return self.to_string()


@dataclass
class PrecisionContext:
    """
    Working precision for a computation.

    Everything evaluates internally at ``working_digits + guard_digits``
    and is reported at ``working_digits``.
    """
    working_digits: int
    guard_digits: int = 10
    term_cap_factor: int = 100
    gamma_algorithm: str = 'library'
    mp: Any = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_precision(self.working_digits)
        if self.guard_digits < 1:
            raise PrecisionError(f"guard_digits must be positive, got {self.guard_digits}")
        if self.gamma_algorithm not in ('library', 'spouge'):
            raise PrecisionError(f"Unknown gamma algorithm: {self.gamma_algorithm}")
        self.mp = mp_for(self.internal_digits)

    @property
    def internal_digits(self) -> int:
        return self.working_digits + self.guard_digits

    @property
    def term_cap(self) -> int:
        return self.term_cap_factor * self.working_digits

    @property
    def epsilon(self):
        """Relative tolerance 10^(1 - working_digits)."""
        return self.mp.mpf(10) ** (1 - self.working_digits)

    def raised(self, extra_digits: int) -> 'PrecisionContext':
        """Same settings with more working digits."""
        return PrecisionContext(
            self.working_digits + extra_digits,
            guard_digits=self.guard_digits,
            term_cap_factor=self.term_cap_factor,
            gamma_algorithm=self.gamma_algorithm,
        )

    def mpf(self, value: Number):
        return to_mpf(value, self.mp)

    def report(self, value: Number) -> BigReal:
        """Wrap an internal value as a BigReal at working precision."""
        return BigReal(self.mpf(value), self.working_digits)


# ---------------------------------------------------------------------------
# Elementary functions
# ---------------------------------------------------------------------------

def _power(mp, x, y):
    if x < 0 and y != mp.floor(y):
        raise DomainError("power(x, y) needs x > 0 for non-integer y")
    if x == 0 and y <= 0:
        raise DomainError("power(0, y) needs y > 0")
    return mp.power(x, y)


def _ln(mp, x):
    if x <= 0:
        raise DomainError(f"ln needs a positive argument, got {mp.nstr(x, 10)}")
    return mp.ln(x)


def _sqrt(mp, x):
    if x < 0:
        raise DomainError(f"sqrt needs a non-negative argument, got {mp.nstr(x, 10)}")
    return mp.sqrt(x)


ELEMENTARY: Dict[str, Tuple[int, Callable]] = {
    'sin': (1, lambda mp, x: mp.sin(x)),
    'cos': (1, lambda mp, x: mp.cos(x)),
    'exp': (1, lambda mp, x: mp.exp(x)),
    'ln': (1, _ln),
    'sqrt': (1, _sqrt),
    'power': (2, _power),
    'pi': (0, lambda mp: +mp.pi),
    'atan2': (2, lambda mp, y, x: mp.atan2(y, x)),
}


def elementary(fn: str, *args: Number, ctx: PrecisionContext) -> BigReal:
    """
    Evaluate an elementary function at the context's precision.

    Args:
        fn: One of sin, cos, exp, ln, sqrt, power, pi, atan2
        *args: Function arguments
        ctx: Precision context

    Returns:
        BigReal at ``ctx.working_digits``
    """
    if fn not in ELEMENTARY:
        raise DomainError(f"Unknown elementary function: {fn}")
    arity, func = ELEMENTARY[fn]
    if len(args) != arity:
        raise DomainError(f"{fn} takes {arity} argument(s), got {len(args)}")
    return ctx.report(func(ctx.mp, *[ctx.mpf(a) for a in args]))


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _spouge_coefficients(a: int, digits: int) -> Tuple:
    mp = mp_for(digits)
    coefficients = [mp.sqrt(2 * mp.pi)]
    factorial = mp.one
    for k in range(1, a):
        if k > 1:
            factorial *= k - 1
        c = mp.power(a - k, mp.mpf(k) - mp.mpf(1) / 2) * mp.exp(a - k) / factorial
        coefficients.append(c if k % 2 == 1 else -c)
    return tuple(coefficients)


def spouge_gamma(x, digits: int):
    """
    Gamma by Spouge's series, Γ(x) = Γ(x+1)/x.

    The parameter a = ceil(1.26·digits) gives relative error below
    10^-digits; coefficients carry ``a`` extra digits for cancellation.
    """
    a = math.ceil(1.26 * digits) + 1
    work = digits + a
    mp = mp_for(work)
    z = mp.mpf(x)
    coefficients = _spouge_coefficients(a, work)
    total = coefficients[0]
    for k in range(1, a):
        total += coefficients[k] / (z + k)
    gamma_z1 = mp.power(z + a, z + mp.mpf(1) / 2) * mp.exp(-(z + a)) * total
    return gamma_z1 / z


def _gamma_mpf(x, ctx: PrecisionContext):
    if x <= 0:
        raise DomainError("gamma needs x > 0")
    if ctx.gamma_algorithm == 'spouge':
        return ctx.mpf(spouge_gamma(x, ctx.internal_digits))
    return ctx.mp.gamma(x)


def gamma(x: Number, ctx: PrecisionContext) -> BigReal:
    """Γ(x) for x > 0."""
    return ctx.report(_gamma_mpf(ctx.mpf(x), ctx))


# ---------------------------------------------------------------------------
# Bessel J
# ---------------------------------------------------------------------------

INVERSE_GAMMA_CACHE_SIZE = 4096


@lru_cache(maxsize=INVERSE_GAMMA_CACHE_SIZE)
def inverse_gamma(m, digits: int, algorithm: str = 'library'):
    """1/Γ(m+1) at ``digits`` decimal digits, shared by every evaluator."""
    mp = mp_for(digits)
    order = to_mpf(m, mp) + 1
    if algorithm == 'spouge':
        return 1 / mp.mpf(spouge_gamma(order, digits))
    return mp.rgamma(order)


class BesselEvaluator:
    """
    Bessel J of real non-negative order by the ascending series.

    1/Γ(m+1) comes from the bounded ``inverse_gamma`` cache, keyed by order
    and series precision, so evaluators are safe to share between worker
    threads.
    """

    # Extra cancellation digits per unit of x
    CANCELLATION_RATE = 0.45

    def __init__(self, ctx: PrecisionContext):
        self.ctx = ctx

    def _series_context(self, x) -> mpmath.MPContext:
        extra = math.ceil(self.CANCELLATION_RATE * float(x))
        return mp_for(self.ctx.internal_digits + extra)

    def j(self, m, x):
        """
        J_m(x) as an mpf at the context's internal precision.

        Args:
            m: Order (Fraction, int or mpf), m >= 0
            x: Argument (mpf), x >= 0
        """
        ctx = self.ctx
        mp_m = ctx.mpf(m)
        if mp_m < 0:
            raise DomainError("Bessel order must be non-negative")
        if x < 0:
            raise DomainError("Bessel argument must be non-negative")
        if x == 0:
            return ctx.mp.one if mp_m == 0 else ctx.mp.zero

        mp = self._series_context(x)
        order = to_mpf(m, mp)
        half = mp.mpf(x) / 2
        q = -half * half
        if order == 0:
            term = mp.one
        else:
            term = mp.exp(order * mp.ln(half)) * inverse_gamma(m, mp.dps, self.ctx.gamma_algorithm)
        total = term
        largest = abs(term)
        cutoff = mp.mpf(10) ** (-ctx.internal_digits)
        for j in range(1, ctx.term_cap + 1):
            term = term * q / (j * (order + j))
            total += term
            size = abs(term)
            if size > largest:
                largest = size
            elif size < cutoff * largest:
                return ctx.mpf(total)
        raise ConvergenceError(
            f"Bessel series for order {m} at x={mp.nstr(x, 15)} did not converge "
            f"within {ctx.term_cap} terms"
        )

    def j_pair(self, m, x):
        """Return (J_m(x), J_{m+1}(x))."""
        return self.j(m, x), self.j(m + 1, x)


def bessel_j(m: Number, x: Number, ctx: PrecisionContext) -> BigReal:
    """J_m(x) for m >= 0 and x >= 0."""
    return ctx.report(BesselEvaluator(ctx).j(_order(m, ctx), ctx.mpf(x)))


def _order(m: Number, ctx: PrecisionContext):
    if isinstance(m, (Fraction, int)):
        return Fraction(m)
    return ctx.mpf(m)


def bessel_j_zero(m: Number, index: int, ctx: PrecisionContext, step: float = 0.5) -> BigReal:
    """
    The ``index``-th positive zero of J_m.

    Scans for sign changes from x = m with the given step, then refines
    the bracket by secant with bisection fallback.
    """
    if index < 1:
        raise DomainError("Zero index must be >= 1")
    order = _order(m, ctx)
    mp = ctx.mp
    evaluator = BesselEvaluator(ctx)
    f = lambda x: evaluator.j(order, x)

    start = ctx.mpf(order) if ctx.mpf(order) > 0 else mp.zero
    span_end = start + mp.pi * (index + 2) + 10
    h = mp.mpf(step)
    a, fa = start, f(start)
    found = 0
    x = start
    while x < span_end:
        b = x + h
        fb = f(b)
        if fa == 0 and a > 0:
            found += 1
            if found == index:
                return ctx.report(a)
        elif fa * fb < 0:
            found += 1
            if found == index:
                root = secant_bisection(f, a, b, fa, fb, ctx.internal_digits, mp,
                                        max_iterations=4 * ctx.working_digits + 100)
                return ctx.report(root)
        a, fa, x = b, fb, b
    raise ConvergenceError(
        f"Could not bracket zero {index} of J_{order} below x={mp.nstr(span_end, 10)}"
    )


# ---------------------------------------------------------------------------
# Riemann zeta
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _borwein_weights(n: int) -> Tuple[int, ...]:
    weights = []
    total = 0
    for i in range(n + 1):
        total += n * math.factorial(n + i - 1) * 4 ** i // (math.factorial(n - i) * math.factorial(2 * i))
        weights.append(total)
    return tuple(weights)


def zeta(s: int, ctx: PrecisionContext) -> BigReal:
    """
    ζ(s) for integer s >= 2 by Borwein's acceleration of the
    alternating eta series.
    """
    if not isinstance(s, int) or s < 2:
        raise DomainError(f"zeta needs an integer s >= 2, got {s!r}")
    mp = ctx.mp
    n = math.ceil(1.31 * ctx.internal_digits) + 2
    d = _borwein_weights(n)
    dn = d[n]
    total = mp.zero
    for k in range(n):
        term = mp.mpf(d[k] - dn) / mp.power(k + 1, s)
        total += term if k % 2 == 0 else -term
    value = -total / (dn * (1 - mp.power(2, 1 - s)))
    return ctx.report(value)
