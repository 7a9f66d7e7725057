"""
Result Data Structures

Defines the value types passed between the solver, the eigenfunction
tools and the command-line front end.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from point_matching.core.bounds import format_bound
from point_matching.core.errors import ConfigError
from point_matching.core.precision import BigReal


@dataclass(frozen=True)
class DetValue:
    """
    Sign and log10 magnitude of a determinant.

    sign is 0 only when elimination met an exact zero pivot.
    """
    sign: int
    log10_magnitude: Any

    def as_mpf(self, mp):
        """Signed value sign * 10^log10_magnitude."""
        if self.sign == 0:
            return mp.zero
        return self.sign * mp.power(10, mp.mpf(self.log10_magnitude))


@dataclass
class RootEstimate:
    """
    A refined root λ^[N] of the point-matching determinant.

    Attributes:
        lambda_value: Refined eigenvalue estimate
        N: Number of matching conditions
        bracket: Final (low, high) bracket with opposite determinant signs
        refined_digits: Digits of agreement between the last two iterates
        det_evaluations: Determinants evaluated during refinement
    """
    lambda_value: BigReal
    N: int
    bracket: Tuple[BigReal, BigReal]
    refined_digits: int
    det_evaluations: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda': self.lambda_value.to_string(),
            'N': self.N,
            'bracket': [self.bracket[0].to_string(), self.bracket[1].to_string()],
            'refined_digits': self.refined_digits,
            'det_evaluations': self.det_evaluations,
        }


@dataclass(frozen=True)
class IncrementSchedule:
    """Properly incremented N values N_start, N_start + ΔN, ..., <= N_max."""
    N_start: int
    delta_N: int
    N_max: int

    def __post_init__(self):
        if self.delta_N < 1:
            raise ConfigError(f"delta_N must be >= 1, got {self.delta_N}")
        if self.N_start < 1 or self.N_max < self.N_start:
            raise ConfigError(f"Invalid N range {self.N_start}..{self.N_max}")

    def values(self) -> List[int]:
        return list(range(self.N_start, self.N_max + 1, self.delta_N))


@dataclass
class BoundResult:
    """
    Two-sided eigenvalue bound read from the alternation of λ^[N].

    Attributes:
        lambda_lo: Value at a local minimum of the history
        lambda_hi: Value at the adjacent local maximum
        N_down: N giving lambda_lo
        N_up: N giving lambda_hi
        epsilon: Relative gap (hi - lo) / ((hi + lo) / 2)
        digits_D: -log10 epsilon
        rho: digits_D / max(N_up, N_down)
        history: (N, λ^[N]) pairs in schedule order
    """
    lambda_lo: BigReal
    lambda_hi: BigReal
    N_down: int
    N_up: int
    epsilon: BigReal
    digits_D: BigReal
    rho: BigReal
    history: List[Tuple[int, BigReal]] = field(default_factory=list)

    @property
    def bound_string(self) -> str:
        return format_bound(self.lambda_lo, self.lambda_hi)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lambda_lo': self.lambda_lo.to_string(),
            'lambda_hi': self.lambda_hi.to_string(),
            'bound_string': self.bound_string,
            'N_down': self.N_down,
            'N_up': self.N_up,
            'epsilon': self.epsilon.to_string(),
            'digits_D': self.digits_D.to_string(),
            'rho': self.rho.to_string(),
            'history': [[n, value.to_string()] for n, value in self.history],
        }


@dataclass
class CoefficientVector:
    """
    Expansion coefficients c_ν at a converged eigenvalue.

    c[normalization] is exactly 1.
    """
    c: List[Any]
    normalization: int
    lambda_value: Any

    def __len__(self):
        return len(self.c)


@dataclass
class GridExport:
    """
    Raster of eigenfunction values for contour plotting.

    Each row is (x, y, value) with value None outside the shape.
    """
    resolution: int
    bounding_box: Tuple[float, float, float, float]
    values: List[Tuple[str, str, Optional[str]]] = field(default_factory=list)
    unfold: bool = False

    HEADER = 'x y value'

    def to_text(self) -> str:
        lines = [self.HEADER]
        for x, y, value in self.values:
            lines.append(f"{x} {y} {value if value is not None else ''}".rstrip())
        return '\n'.join(lines) + '\n'


@dataclass
class ResultRecord:
    """Machine-readable outcome of a ``solve`` run. All reals are decimal strings."""
    shape: str
    class_id: str
    boundary_kind: str
    index: int
    lambda_lo: str
    lambda_hi: str
    bound_string: str
    epsilon: str
    digits_D: str
    rho: str
    N_down: int
    N_up: int
    working_precision: int
    wall_seconds: float

    FIELDS = (
        'shape', 'class', 'boundary_kind', 'index', 'lambda_lo', 'lambda_hi',
        'bound_string', 'epsilon', 'digits_D', 'rho', 'N_down', 'N_up',
        'working_precision', 'wall_seconds',
    )

    @classmethod
    def from_bound(
        cls,
        bound: BoundResult,
        shape: str,
        class_id: str,
        boundary_kind: str,
        index: int,
        working_precision: int,
        wall_seconds: float,
    ) -> 'ResultRecord':
        return cls(
            shape=shape,
            class_id=class_id,
            boundary_kind=boundary_kind,
            index=index,
            lambda_lo=bound.lambda_lo.to_string(),
            lambda_hi=bound.lambda_hi.to_string(),
            bound_string=bound.bound_string,
            epsilon=bound.epsilon.to_string(),
            digits_D=bound.digits_D.to_string(),
            rho=bound.rho.to_string(),
            N_down=bound.N_down,
            N_up=bound.N_up,
            working_precision=working_precision,
            wall_seconds=round(wall_seconds, 3),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'shape': self.shape,
            'class': self.class_id,
            'boundary_kind': self.boundary_kind,
            'index': self.index,
            'lambda_lo': self.lambda_lo,
            'lambda_hi': self.lambda_hi,
            'bound_string': self.bound_string,
            'epsilon': self.epsilon,
            'digits_D': self.digits_D,
            'rho': self.rho,
            'N_down': self.N_down,
            'N_up': self.N_up,
            'working_precision': self.working_precision,
            'wall_seconds': self.wall_seconds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + '\n'
