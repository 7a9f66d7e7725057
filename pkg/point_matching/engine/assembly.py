"""
Point-Matching Matrix Assembly

Builds the N x N matrix M(λ) for a shape class: one row per matching
condition in row-plan order, one column per basis function.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from point_matching.core.errors import ConfigError, DimensionError
from point_matching.core.precision import BesselEvaluator, PrecisionContext
from point_matching.engine.expansion import ExpansionSpec
from point_matching.engine.geometry import EdgeLine, edge_line
from point_matching.engine.rows import RowKind, RowPlanEntry, build_row

logger = logging.getLogger(__name__)


@dataclass
class PointMatchMatrix:
    """Square matrix of basis values at the matching conditions."""
    entries: List[List[Any]]
    lambda_value: Any
    N: int
    row_plan: List[RowPlanEntry] = field(default_factory=list, repr=False)
    column_scale: Optional[List[Any]] = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.entries) != self.N or any(len(row) != self.N for row in self.entries):
            raise DimensionError(f"Matrix is not {self.N} x {self.N}")

    def to_text(self, mp, digits: int = 20) -> str:
        """Dump in row-plan order: one header per row, then its entries."""
        lines = [f"# N={self.N} lambda={mp.nstr(self.lambda_value, digits)}"]
        for i, (entry, row) in enumerate(zip(self.row_plan, self.entries), start=1):
            where = f"{mp.nstr(entry.x, 12)} {mp.nstr(entry.y, 12)}"
            lines.append(f"# row {i} {entry.kind.value} edge={entry.edge or '-'} at {where}")
            lines.append(' '.join(mp.nstr(value, digits) for value in row))
        return '\n'.join(lines) + '\n'


def edge_lines(descriptor) -> Dict[int, EdgeLine]:
    """Edge lines of every point-matched edge of the region."""
    region = descriptor.region
    return {edge: edge_line(region, edge) for edge in region.point_matched_edges()}


def column_normalizers(spec: ExpansionSpec) -> List[Any]:
    """(k/2)^m / Γ(m+1), the leading small-argument size of J_m(k r)."""
    mp = spec.ctx.mp
    half_k = spec.k / 2
    return [mp.power(half_k, spec.ctx.mpf(m)) * mp.rgamma(spec.ctx.mpf(m) + 1) for m in spec.orders]


def assemble(
    descriptor,
    N: int,
    lam,
    ctx: PrecisionContext,
    threads: int = 1,
    normalize_columns: bool = False,
    row_plan: Optional[List[RowPlanEntry]] = None,
    bessel: Optional[BesselEvaluator] = None,
) -> PointMatchMatrix:
    """
    Assemble M(λ) for ``descriptor`` with N matching conditions.

    Rows are computed concurrently when ``threads`` > 1; row order is the
    row-plan order regardless of completion order.

    Args:
        descriptor: ShapeClassDescriptor
        N: Number of conditions (and basis functions)
        lam: Trial eigenvalue λ > 0
        ctx: Precision context
        threads: Worker threads for row construction
        normalize_columns: Divide column ν by (k/2)^m/Γ(m+1)
        row_plan: Precomputed row plan (built from the descriptor if omitted)
        bessel: Shared Bessel evaluator

    Returns:
        PointMatchMatrix
    """
    mp = ctx.mp
    lam = ctx.mpf(lam)
    if lam <= 0:
        raise ConfigError(f"λ must be positive, got {mp.nstr(lam, 10)}")
    plan = row_plan if row_plan is not None else descriptor.row_plan(N)
    if len(plan) != N:
        raise DimensionError(f"Row plan has {len(plan)} rows, expected {N}")

    spec = ExpansionSpec(descriptor.m_sequence(), N, mp.sqrt(lam), descriptor.region.phi1, ctx,
                         bessel=bessel or BesselEvaluator(ctx))
    lines = edge_lines(descriptor)

    def one_row(entry: RowPlanEntry):
        return build_row(spec, entry, lines)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(one_row, plan))
    else:
        rows = [one_row(entry) for entry in plan]

    scale = None
    if normalize_columns:
        scale = column_normalizers(spec)
        rows = [[value / s for value, s in zip(row, scale)] for row in rows]

    vertex_rows = sum(1 for entry in plan if entry.kind == RowKind.VERTEX_THETA_DERIVATIVE)
    logger.debug(
        f"Assembled {descriptor.label} N={N} λ={mp.nstr(lam, 12)} "
        f"({vertex_rows} vertex rows, threads={threads})"
    )
    return PointMatchMatrix(rows, lam, N, plan, scale)
