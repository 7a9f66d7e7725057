"""
Core utilities for point matching: precision, special functions,
errors and result types.
"""
from point_matching.core.bounds import format_bound, parse_bound
from point_matching.core.errors import PointMatchingError
from point_matching.core.precision import (
    BigReal,
    PrecisionContext,
    BesselEvaluator,
    elementary,
    gamma,
    bessel_j,
    bessel_j_zero,
    zeta,
)
from point_matching.core.result import (
    DetValue,
    RootEstimate,
    IncrementSchedule,
    BoundResult,
    CoefficientVector,
    GridExport,
    ResultRecord,
)

__all__ = [
    'format_bound',
    'parse_bound',
    'PointMatchingError',
    'BigReal',
    'PrecisionContext',
    'BesselEvaluator',
    'elementary',
    'gamma',
    'bessel_j',
    'bessel_j_zero',
    'zeta',
    'DetValue',
    'RootEstimate',
    'IncrementSchedule',
    'BoundResult',
    'CoefficientVector',
    'GridExport',
    'ResultRecord',
]
