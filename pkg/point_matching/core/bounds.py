"""
Bound Formatting

Two-sided eigenvalue bounds written as common leading digits followed by
a rounded-down subscript tail and a rounded-up superscript tail, e.g.
``9.6397238_{43}^{55}``, plus the gap diagnostics reported with them.
"""
import re
from typing import Optional, Tuple

from point_matching.core.errors import DomainError
from point_matching.core.precision import BigReal, Number, mp_for, to_mpf

MIN_TAIL_DIGITS = 2
# One more tail digit per ten digits of agreement
TAIL_DIGIT_SPAN = 10
EXACT_TAIL_MAX = 4
DEFAULT_STRING_DIGITS = 50

_BOUND_PATTERN = re.compile(r'^(?P<prefix>[0-9.]*)_\{(?P<lo>[0-9.]+)\}\^\{(?P<hi>[0-9.]+)\}$')


def _digits_of(value: Number, digits: int) -> Tuple[str, str]:
    """Fixed-point (integer part, fraction part) with trailing zeros removed."""
    mp = mp_for(digits + 5)
    x = to_mpf(value, mp)
    if x < 0:
        raise DomainError("Bounds must be non-negative")
    text = mp.nstr(x, digits, strip_zeros=True, min_fixed=-mp.inf, max_fixed=mp.inf)
    whole, _, fraction = text.partition('.')
    return whole.lstrip('0'), fraction.rstrip('0')


def _precision_of(value: Number) -> Optional[int]:
    return value.precision if isinstance(value, BigReal) else None


def _common_prefix(a: str, b: str) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def _dotted(digits: str, int_len: int) -> str:
    if int_len >= len(digits):
        return digits
    return digits[:int_len] + '.' + digits[int_len:]


def format_bound(
    lo: Number,
    hi: Number,
    tail_digits: Optional[int] = None,
    exact_tail_max: int = EXACT_TAIL_MAX,
) -> str:
    """
    Format the interval [lo, hi] as ``common_{low}^{high}``.

    Inputs whose decimal expansions end within ``exact_tail_max`` digits
    after the common prefix are shown exactly. Otherwise ``tail_digits``
    digits follow the prefix, the low tail rounded down and the high tail
    rounded up, so the printed interval always encloses the inputs. The
    default tail grows with the digit count D of the bound: two digits up
    to D ≈ 15, three around D = 20, four around D = 30.
    An empty common prefix gives ``_{1}^{2}`` style output.

    Args:
        lo: Lower bound
        hi: Upper bound, hi > lo
        tail_digits: Tail length for inexact inputs, None to follow D
        exact_tail_max: Longest tail shown exactly

    Returns:
        Bound string
    """
    digits = min(p for p in (_precision_of(lo), _precision_of(hi), DEFAULT_STRING_DIGITS) if p)
    lo_int, lo_frac = _digits_of(lo, digits)
    hi_int, hi_frac = _digits_of(hi, digits)
    if (len(lo_int), lo_int, lo_frac) >= (len(hi_int), hi_int, hi_frac):
        raise DomainError("format_bound needs lo < hi")

    int_len = max(len(lo_int), len(hi_int), 1)
    frac_len = max(len(lo_frac), len(hi_frac))
    lo_all = lo_int.zfill(int_len) + lo_frac.ljust(frac_len, '0')
    hi_all = hi_int.zfill(int_len) + hi_frac.ljust(frac_len, '0')
    common = _common_prefix(lo_all, hi_all)

    if len(lo_all) - common <= exact_tail_max:
        lo_cut, hi_cut = lo_all, hi_all
    else:
        if tail_digits is None:
            tail_digits = tail_width(lo, hi, digits)
        tail_digits = min(tail_digits, len(lo_all) - common)
        keep = common + tail_digits
        drop = len(lo_all) - keep
        scale = 10 ** drop
        lo_cut = str(int(lo_all) // scale).zfill(keep)
        hi_cut = str(-(-int(hi_all) // scale)).zfill(keep)
        if len(hi_cut) > keep:
            int_len += 1
            lo_cut = lo_cut.zfill(len(hi_cut))

    lo_text = _dotted(lo_cut, int_len)
    hi_text = _dotted(hi_cut, int_len)
    shared = _common_prefix(lo_text, hi_text)
    prefix = lo_text[:shared]
    lo_tail, hi_tail = lo_text[shared:], hi_text[shared:]
    if not prefix:
        lo_tail = lo_tail.lstrip('0') or '0'
        if lo_tail.startswith('.'):
            lo_tail = '0' + lo_tail
    return f"{prefix}_{{{lo_tail}}}^{{{hi_tail}}}"


def parse_bound(text: str) -> Tuple[str, str]:
    """Return the (low, high) decimal strings encoded by a bound string."""
    match = _BOUND_PATTERN.match(text.strip())
    if not match:
        raise DomainError(f"Not a bound string: {text!r}")
    prefix = match.group('prefix')
    return prefix + match.group('lo'), prefix + match.group('hi')


def relative_gap(lo: Number, hi: Number, mp):
    """ε = (hi - lo) / ((hi + lo) / 2)."""
    lo, hi = to_mpf(lo, mp), to_mpf(hi, mp)
    return (hi - lo) / ((hi + lo) / 2)


def digit_count(epsilon, mp):
    """D = -log10 ε."""
    return -mp.log10(epsilon)


def convergence_rate(digits_d, n_down: int, n_up: int, mp):
    """ρ = D / max(N_down, N_up)."""
    return mp.mpf(digits_d) / max(n_down, n_up)


def tail_width(lo: Number, hi: Number, digits: int = DEFAULT_STRING_DIGITS) -> int:
    """Default tail length for a bound agreeing to D digits: max(2, round(D/10) + 1)."""
    mp = mp_for(digits + 5)
    d = digit_count(relative_gap(lo, hi, mp), mp)
    return max(MIN_TAIL_DIGITS, int(mp.nint(d / TAIL_DIGIT_SPAN)) + 1)
