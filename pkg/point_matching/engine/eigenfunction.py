"""
Eigenfunction Tools

Coefficients of the truncated expansion at a converged eigenvalue,
evaluation inside Ω and on the full shape, boundary and Helmholtz
residuals, contour-grid export and coefficient zero-pattern grouping.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from point_matching.core.errors import (
    ConfigError,
    DegenerateRowError,
    DimensionError,
    GeometryError,
    RankDeficiencyError,
)
from point_matching.core.precision import BesselEvaluator, PrecisionContext
from point_matching.core.result import CoefficientVector, GridExport
from point_matching.engine.assembly import PointMatchMatrix, assemble, edge_lines
from point_matching.engine.catalog import UnfoldMode
from point_matching.engine.expansion import ExpansionSpec, Parity, expansion_eval
from point_matching.engine.geometry import Vertex, edge_line
from point_matching.engine.rows import ROW_BUILDERS, RowKind

logger = logging.getLogger(__name__)

MIN_GRID_RESOLUTION = 16
EXPORT_DIGITS = 17
INSIDE_TOLERANCE = '1e-12'


# ---------------------------------------------------------------------------
# Coefficients
# ---------------------------------------------------------------------------

def null_vector(
    entries: Sequence[Sequence[Any]], ctx: PrecisionContext,
) -> Tuple[List[Any], List[Any], List[int]]:
    """
    Null vector of a (numerically) singular matrix by elimination with
    complete pivoting.

    The column left for last is the free variable and is set to 1; the
    remaining N-1 unknowns follow by back substitution.

    Returns:
        (vector, pivots, columns): pivots in elimination order and the
        original column index each pivot was taken from
    """
    mp = ctx.mp
    n = len(entries)
    a = [[ctx.mpf(v) for v in row] for row in entries]
    cols = list(range(n))
    pivots = []
    for k in range(n - 1):
        best, bi, bj = mp.zero, k, k
        for i in range(k, n):
            for j in range(k, n):
                if abs(a[i][j]) > best:
                    best, bi, bj = abs(a[i][j]), i, j
        if best == 0:
            raise RankDeficiencyError(f"Matrix rank below {k + 1} of {n}")
        a[k], a[bi] = a[bi], a[k]
        if bj != k:
            for row in a:
                row[k], row[bj] = row[bj], row[k]
            cols[k], cols[bj] = cols[bj], cols[k]
        pivot = a[k][k]
        pivots.append(pivot)
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor:
                for j in range(k, n):
                    a[i][j] -= factor * a[k][j]
    pivots.append(a[n - 1][n - 1] if n else mp.zero)

    x = [mp.zero] * n
    if n:
        x[n - 1] = mp.one
    for k in range(n - 2, -1, -1):
        total = sum(a[k][j] * x[j] for j in range(k + 1, n))
        x[k] = -total / a[k][k]
    vector = [mp.zero] * n
    for position, column in enumerate(cols):
        vector[column] = x[position]
    return vector, pivots, cols


def coefficients(matrix: PointMatchMatrix, ctx: PrecisionContext) -> CoefficientVector:
    """
    Coefficients c with M·c ≈ 0, scaled so the coefficient of the column
    holding the largest pivot is exactly 1.

    Raises:
        RankDeficiencyError: A second pivot is at the noise level
    """
    mp = ctx.mp
    if matrix.N == 1:
        return CoefficientVector([mp.one], 0, matrix.lambda_value)
    vector, pivots, columns = null_vector(matrix.entries, ctx)
    noise = mp.mpf(10) ** (5 - ctx.working_digits) * abs(pivots[0])
    if abs(pivots[-2]) <= noise:
        raise RankDeficiencyError(
            f"Two near-zero pivots at λ={mp.nstr(matrix.lambda_value, 15)}: unexpected degeneracy"
        )
    if matrix.column_scale is not None:
        vector = [v / s for v, s in zip(vector, matrix.column_scale)]
    # Complete pivoting takes the largest pivot first
    normalization = columns[0]
    top = vector[normalization]
    if top == 0:
        raise RankDeficiencyError(
            f"Column {normalization} of the largest pivot has a zero coefficient at "
            f"λ={mp.nstr(matrix.lambda_value, 15)}"
        )
    vector = [v / top for v in vector]
    vector[normalization] = mp.one

    scale = matrix.column_scale or [mp.one] * matrix.N
    residual = max(abs(sum(e * v * s for e, v, s in zip(row, vector, scale))) for row in matrix.entries)
    row_norm = max(max(abs(e) for e in row) for row in matrix.entries)
    if residual > mp.mpf(10) ** (5 - ctx.working_digits) * row_norm:
        logger.warning(f"Coefficient residual {mp.nstr(residual / row_norm, 5)} above the noise level")
    return CoefficientVector(vector, normalization, matrix.lambda_value)


def solve_coefficients(descriptor, N: int, lam, ctx: PrecisionContext, threads: int = 1) -> CoefficientVector:
    """Assemble M(λ) at a converged λ and extract its coefficients."""
    return coefficients(assemble(descriptor, N, lam, ctx, threads=threads, normalize_columns=True), ctx)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

class Eigenfunction:
    """
    Ψ = Σ c_ν ψ_ν at a converged eigenvalue, with the full-shape extension
    by reflections (parity signs) or by rotations (cos(γα) relation).
    """

    def __init__(self, descriptor, coeffs: CoefficientVector, ctx: PrecisionContext):
        mp = ctx.mp
        self.descriptor = descriptor
        self.coeffs = coeffs
        self.ctx = ctx
        self.region = descriptor.region
        self.spec = ExpansionSpec(
            descriptor.m_sequence(), len(coeffs), mp.sqrt(ctx.mpf(coeffs.lambda_value)),
            self.region.phi1, ctx, bessel=BesselEvaluator(ctx),
        )
        self.tol = mp.mpf(INSIDE_TOLERANCE)
        self.mirrors = {e: edge_line(self.region, e) for e in descriptor.symmetry_edges}
        if descriptor.unfold_mode == UnfoldMode.ROTATE:
            self._setup_rotation()

    # -- inside Ω --------------------------------------------------------

    def value(self, x, y):
        """Series value at a point of Ω (the sector at V1)."""
        mp = self.ctx.mp
        x, y = self.ctx.mpf(x), self.ctx.mpf(y)
        r = mp.hypot(x, y)
        theta = mp.atan2(y, x) if r else self.region.phi1
        return expansion_eval(self.spec, self.coeffs.c, r, theta)

    def normal_derivative(self, x, y, line) -> Any:
        """∂Ψ/∂n for the unit normal of ``line``."""
        mp = self.ctx.mp
        r2 = x * x + y * y
        try:
            row = ROW_BUILDERS[RowKind.EVEN_NORMAL_DERIVATIVE].values(self.spec, x, y, line)
        except DegenerateRowError:
            return mp.zero
        return sum(c * e for c, e in zip(self.coeffs.c, row)) / r2

    # -- full shape ------------------------------------------------------

    def _setup_rotation(self):
        mp = self.ctx.mp
        vertices = self.region.vertices
        self.center = vertices[2]
        a2 = mp.atan2(vertices[1].y - self.center.y, vertices[1].x - self.center.x)
        a4 = mp.atan2(vertices[3].y - self.center.y, vertices[3].x - self.center.x)
        turn = a2 - a4
        while turn <= -mp.pi:
            turn += 2 * mp.pi
        while turn > mp.pi:
            turn -= 2 * mp.pi
        self.turn_sign = 1 if turn > 0 else -1
        self.alpha = 2 * mp.pi / self.descriptor.sigma
        self.base_angle = a4
        self.mirror = edge_line(self.region, 2)

    def _rotate(self, x, y, angle):
        mp = self.ctx.mp
        c, s = mp.cos(angle), mp.sin(angle)
        dx, dy = x - self.center.x, y - self.center.y
        return self.center.x + c * dx - s * dy, self.center.y + s * dx + c * dy

    def _reflect(self, x, y, line):
        d = line.residual(x, y)
        return x - 2 * d * line.A, y - 2 * d * line.B

    def _fold(self, x, y):
        """Map a point into Ω by mirror reflections; (x, y, sign) or None."""
        limit = 4 * (self.descriptor.sigma or 4) + 4
        sign = 1
        for _ in range(limit):
            if self.region.contains(x, y, self.tol):
                return x, y, sign
            for edge, line in self.mirrors.items():
                if line.residual(x, y) > self.tol:
                    x, y = self._reflect(x, y, line)
                    if self.descriptor.symmetry_edges[edge] == Parity.ODD:
                        sign = -sign
                    break
            else:
                return None
        return None

    def _wedge(self, x, y):
        """(j, x0, y0): P = R^j·(x0, y0) with (x0, y0) in the wedge of Ω."""
        mp = self.ctx.mp
        angle = mp.atan2(y - self.center.y, x - self.center.x) - self.base_angle
        t = (self.turn_sign * angle) % (2 * mp.pi)
        j = int(mp.floor(t / self.alpha + self.tol)) % self.descriptor.sigma
        x0, y0 = self._rotate(x, y, -self.turn_sign * j * self.alpha)
        return j, x0, y0

    def _partner_pair(self, x0, y0):
        """(Ψ_e, Ψ_o) at a point of Ω for a degenerate pair."""
        mp = self.ctx.mp
        gamma_alpha = self.descriptor.gamma * self.alpha
        even = self.value(x0, y0)
        rx, ry = self._rotate(x0, y0, self.turn_sign * self.alpha)
        mx, my = self._reflect(rx, ry, self.mirror)
        rotated = self.value(mx, my)
        odd = (rotated - mp.cos(gamma_alpha) * even) / mp.sin(gamma_alpha)
        return even, odd

    def full_value(self, x, y) -> Optional[Any]:
        """Ψ anywhere on the full shape, None outside it."""
        mp = self.ctx.mp
        x, y = self.ctx.mpf(x), self.ctx.mpf(y)
        mode = self.descriptor.unfold_mode
        if mode == UnfoldMode.ROTATE:
            j, x0, y0 = self._wedge(x, y)
            if not self.region.contains(x0, y0, self.tol):
                return None
            even, odd = self._partner_pair(x0, y0)
            phase = j * self.descriptor.gamma * self.alpha
            c, s = mp.cos(phase), mp.sin(phase)
            if self.descriptor.q_parity == 'odd':
                return -s * even + c * odd
            return c * even + s * odd
        if mode == UnfoldMode.REFLECT:
            folded = self._fold(x, y)
            if folded is None:
                return None
            fx, fy, sign = folded
            return sign * self.value(fx, fy)
        if not self.region.contains(x, y, self.tol):
            return None
        return self.value(x, y)

    def region_value(self, x, y) -> Optional[Any]:
        """Ψ on Ω only (the odd partner of a pair via its relation), None outside."""
        x, y = self.ctx.mpf(x), self.ctx.mpf(y)
        if not self.region.contains(x, y, self.tol):
            return None
        if self.descriptor.q_parity == 'odd':
            return self._partner_pair(x, y)[1]
        return self.value(x, y)

    def images(self) -> List[List[Vertex]]:
        """Copies of Ω that tile the full shape."""
        mp = self.ctx.mp
        base = list(self.region.vertices)
        mode = self.descriptor.unfold_mode
        if mode == UnfoldMode.ROTATE:
            copies = []
            for j in range(self.descriptor.sigma):
                angle = self.turn_sign * j * self.alpha
                copies.append([Vertex(*self._rotate(v.x, v.y, angle)) for v in base])
            return copies
        if mode != UnfoldMode.REFLECT:
            return [base]
        limit = 4 * (self.descriptor.sigma or 4) + 4
        seen = {self._key(base)}
        queue, copies = [base], [base]
        while queue and len(copies) < limit:
            polygon = queue.pop(0)
            for edge in self.mirrors:
                p, q = polygon[edge - 1], polygon[edge % len(polygon)]
                dx, dy = q.x - p.x, q.y - p.y
                length = mp.hypot(dx, dy)
                a, b = dy / length, -dx / length
                line_c = a * p.x + b * p.y
                image = []
                for v in polygon:
                    d = a * v.x + b * v.y - line_c
                    image.append(Vertex(v.x - 2 * d * a, v.y - 2 * d * b))
                key = self._key(image)
                if key not in seen:
                    seen.add(key)
                    copies.append(image)
                    queue.append(image)
        return copies

    def _key(self, polygon):
        mp = self.ctx.mp
        cx = sum(v.x for v in polygon) / len(polygon)
        cy = sum(v.y for v in polygon) / len(polygon)
        return mp.nstr(cx, 8), mp.nstr(cy, 8)


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------

def interior_samples(region, count: int = 5) -> List[Tuple[Any, Any]]:
    """Points between the centroid and each vertex."""
    centre = region.centroid()
    samples = [(centre.x, centre.y)]
    for v in region.vertices:
        for i in range(1, count):
            t = region.ctx.mp.mpf(i) / count
            samples.append((centre.x + t * (v.x - centre.x), centre.y + t * (v.y - centre.y)))
    return [p for p in samples if region.contains(p[0], p[1])]


def boundary_residual(descriptor, coeffs: CoefficientVector, ctx: PrecisionContext,
                      samples_per_edge: Optional[int] = None):
    """
    Largest boundary-condition violation over dense samples of the
    point-matched boundary, relative to max |Ψ| over interior sample points.

    Odd edges contribute |Ψ|, even edges |∂Ψ/∂n|.
    """
    mp = ctx.mp
    function = Eigenfunction(descriptor, coeffs, ctx)
    segments = list(descriptor.matched_segments) + list(descriptor.check_segments)
    samples = samples_per_edge or max(8, 2 * len(coeffs))
    if samples < 2:
        raise ConfigError("boundary_residual needs at least two samples per edge")
    lines = edge_lines(descriptor)
    worst = mp.zero
    for edge, start, end in segments:
        parity = descriptor.edge_parity.get(edge)
        if parity is None:
            continue
        for i in range(samples):
            s = start + (end - start) * (i + mp.mpf(1) / 2) / samples
            point = descriptor.region.point_on_edge(edge, s)
            if parity == Parity.ODD:
                try:
                    row = ROW_BUILDERS[RowKind.ODD_VALUE].values(function.spec, point.x, point.y)
                    violation = abs(sum(c * e for c, e in zip(coeffs.c, row)))
                except DegenerateRowError:
                    violation = mp.zero
            else:
                violation = abs(function.normal_derivative(point.x, point.y, lines[edge]))
            worst = max(worst, violation)
    scale = max((abs(function.value(x, y)) for x, y in interior_samples(descriptor.region)), default=mp.zero)
    if scale == 0:
        raise ConfigError("Eigenfunction vanishes at every interior sizing")
    return worst / scale


def helmholtz_residual(function: Eigenfunction, x, y):
    """|ΔΨ + λΨ| / (λ|Ψ|) by second differences at step 10^(-P/4)."""
    ctx = function.ctx
    mp = ctx.mp
    x, y = ctx.mpf(x), ctx.mpf(y)
    h = mp.mpf(10) ** (-(ctx.working_digits // 4))
    centre = function.value(x, y)
    laplacian = (function.value(x + h, y) + function.value(x - h, y)
                 + function.value(x, y + h) + function.value(x, y - h) - 4 * centre) / (h * h)
    lam = ctx.mpf(function.coeffs.lambda_value)
    if centre == 0:
        raise DimensionError("Ψ vanishes at the sizing point")
    return abs(laplacian + lam * centre) / (lam * abs(centre))


# ---------------------------------------------------------------------------
# Grid export
# ---------------------------------------------------------------------------

def grid_export(descriptor, coeffs: CoefficientVector, ctx: PrecisionContext,
                resolution: int = 64, unfold: bool = False, threads: int = 1) -> GridExport:
    """
    Raster Ψ over Ω (or the unfolded full shape) in row-major order.

    Values outside the shape are left blank.
    """
    mp = ctx.mp
    if resolution < MIN_GRID_RESOLUTION:
        raise ConfigError(f"Grid resolution must be >= {MIN_GRID_RESOLUTION}")
    function = Eigenfunction(descriptor, coeffs, ctx)
    if unfold:
        polygons = function.images()
    else:
        polygons = [list(descriptor.region.vertices)]
    xs = [v.x for p in polygons for v in p]
    ys = [v.y for p in polygons for v in p]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    step_x = (x1 - x0) / (resolution - 1)
    step_y = (y1 - y0) / (resolution - 1)
    evaluate = function.full_value if unfold else function.region_value

    def one_row(i):
        y = y0 + i * step_y
        row = []
        for j in range(resolution):
            x = x0 + j * step_x
            value = evaluate(x, y)
            row.append((mp.nstr(x, EXPORT_DIGITS), mp.nstr(y, EXPORT_DIGITS),
                        None if value is None else mp.nstr(value, EXPORT_DIGITS)))
        return row

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(one_row, range(resolution)))
    else:
        rows = [one_row(i) for i in range(resolution)]
    values = [cell for row in rows for cell in row]
    inside = sum(1 for cell in values if cell[2] is not None)
    if inside == 0:
        raise GeometryError("No grid point falls inside the shape")
    logger.info(f"Exported {resolution}x{resolution} grid ({inside} interior points, unfold={unfold})")
    box = (float(x0), float(y0), float(x1), float(y1))
    return GridExport(resolution, box, values, unfold)


# ---------------------------------------------------------------------------
# Coefficient patterns
# ---------------------------------------------------------------------------

DOMINANT = 'dominant'
NEGLIGIBLE = 'negligible'


@dataclass
class PatternReport:
    """Per-mode coefficient classes and index groups sharing a pattern."""
    classifications: List[List[str]]
    groups: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {'classifications': self.classifications, 'groups': self.groups}


def coefficient_pattern_report(vectors: Sequence[CoefficientVector], ctx: PrecisionContext,
                               threshold=None) -> PatternReport:
    """
    Classify each |c_ν| as dominant or negligible (below threshold·max|c|,
    default 10^(6-P)) and group 1-based indices whose pattern across all
    modes coincides. Indices negligible in every mode are left out.
    """
    mp = ctx.mp
    if not vectors:
        raise ConfigError("Pattern report needs at least one coefficient vector")
    size = len(vectors[0])
    if any(len(v) != size for v in vectors):
        raise DimensionError("Coefficient vectors differ in length")
    cutoff = ctx.mpf(threshold) if threshold is not None else mp.mpf(10) ** (6 - ctx.working_digits)
    classifications = []
    for vector in vectors:
        top = max(abs(ctx.mpf(c)) for c in vector.c)
        classifications.append([
            DOMINANT if top and abs(ctx.mpf(c)) >= cutoff * top else NEGLIGIBLE for c in vector.c
        ])
    patterns: Dict[Tuple[bool, ...], List[int]] = {}
    for nu in range(size):
        signature = tuple(row[nu] == DOMINANT for row in classifications)
        if any(signature):
            patterns.setdefault(signature, []).append(nu + 1)
    groups = [
        {'modes': [i + 1 for i, flag in enumerate(signature) if flag], 'indices': indices}
        for signature, indices in sorted(patterns.items(), key=lambda item: item[1][0])
    ]
    return PatternReport(classifications, groups)
