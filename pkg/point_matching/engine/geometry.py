"""
Polygon Geometry

Symmetry-reduced polygons in canonical position, their edge lines and
outward normals, and the matching-point distributions.

Canonical position: V1 at the origin, edge ∂Ω2 (V2 -> V3) on a vertical
line at positive x, and polar angle increasing from ∂Ω1 to ∂Ωs, so the
local angle θ̃ = θ - φ1 runs over [0, Δφ] inside Ω.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from point_matching.core.errors import ConfigError, GeometryError
from point_matching.core.precision import Number, PrecisionContext

logger = logging.getLogger(__name__)

ADJACENT = 'adjacent'
POINT_MATCHED = 'point_matched'

DISTRIBUTIONS = (
    'canonical_chebyshev',
    'equal_spaced',
    'half_sine',
    'star_chebyshev',
    'cutsquare',
    'fhm',
    'fhm_far_edge',
)


@dataclass(frozen=True)
class Vertex:
    """A point (x, y) held as mpf values."""
    x: Any
    y: Any

    def polar(self, mp) -> Tuple[Any, Any]:
        """(r, θ) with θ in (-π, π]."""
        return mp.hypot(self.x, self.y), mp.atan2(self.y, self.x)


@dataclass(frozen=True)
class EdgeLine:
    """Edge line A x + B y = C with (A, B) the outward unit normal."""
    A: Any
    B: Any
    C: Any

    def residual(self, x, y):
        return self.A * x + self.B * y - self.C


@dataclass(frozen=True)
class MatchPoint:
    """A matching point and the 1-based index of the edge it lies on."""
    x: Any
    y: Any
    edge: int


@dataclass
class MatchingSet:
    """Ordered matching points with per-edge counts."""
    points: List[MatchPoint]
    per_edge_counts: List[int]
    distribution_id: str

    def __len__(self):
        return len(self.points)


@dataclass
class CanonicalPolygon:
    """
    Symmetry-reduced region Ω in canonical position.

    Attributes:
        vertices: V1..Vs, V1 = (0, 0)
        edge_roles: role of edge a (1-based) at index a - 1
        phi1: polar angle of ∂Ω1
        phis: polar angle of ∂Ωs
        delta_phi: interior angle at V1
    """
    vertices: List[Vertex]
    edge_roles: List[str]
    phi1: Any
    phis: Any
    delta_phi: Any
    ctx: PrecisionContext = field(repr=False, compare=False)

    @property
    def sides(self) -> int:
        return len(self.vertices)

    def edge_endpoints(self, edge: int) -> Tuple[Vertex, Vertex]:
        if not 1 <= edge <= self.sides:
            raise GeometryError(f"Edge index {edge} out of range 1..{self.sides}")
        return self.vertices[edge - 1], self.vertices[edge % self.sides]

    def edge_length(self, edge: int):
        start, end = self.edge_endpoints(edge)
        return self.ctx.mp.hypot(end.x - start.x, end.y - start.y)

    def point_matched_edges(self) -> List[int]:
        return [i + 1 for i, role in enumerate(self.edge_roles) if role == POINT_MATCHED]

    def point_on_edge(self, edge: int, s) -> MatchPoint:
        """Point at arclength ``s`` from the lower-indexed end of ``edge``."""
        start, end = self.edge_endpoints(edge)
        t = s / self.edge_length(edge)
        return MatchPoint(start.x + t * (end.x - start.x), start.y + t * (end.y - start.y), edge)

    def theta_tilde(self, x, y):
        """Local angle θ - φ1 folded into [-tol, 2π - tol)."""
        mp = self.ctx.mp
        angle = mp.atan2(y, x) - self.phi1
        tol = self.ctx.epsilon * 100
        while angle < -tol:
            angle += 2 * mp.pi
        while angle >= 2 * mp.pi - tol:
            angle -= 2 * mp.pi
        return angle

    def signed_area(self):
        return _signed_area(self.vertices)

    @property
    def area(self):
        return abs(self.signed_area())

    def centroid(self) -> Vertex:
        mp = self.ctx.mp
        a = self.signed_area()
        cx = cy = mp.zero
        for p, q in _pairs(self.vertices):
            cross = p.x * q.y - q.x * p.y
            cx += (p.x + q.x) * cross
            cy += (p.y + q.y) * cross
        return Vertex(cx / (6 * a), cy / (6 * a))

    def bounding_box(self) -> Tuple[Any, Any, Any, Any]:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def contains(self, x, y, tol=None) -> bool:
        """
        Point-in-polygon by half-plane tests on each edge line for points
        near an edge, crossing number elsewhere.
        """
        mp = self.ctx.mp
        tol = mp.mpf('1e-12') if tol is None else tol
        for edge in range(1, self.sides + 1):
            start, end = self.edge_endpoints(edge)
            line = edge_line(self, edge)
            if abs(line.residual(x, y)) <= tol:
                lo_x, hi_x = sorted((start.x, end.x))
                lo_y, hi_y = sorted((start.y, end.y))
                if lo_x - tol <= x <= hi_x + tol and lo_y - tol <= y <= hi_y + tol:
                    return True
        inside = False
        for p, q in _pairs(self.vertices):
            if (p.y > y) != (q.y > y):
                x_cross = p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y)
                if x < x_cross:
                    inside = not inside
        return inside

    def to_text(self) -> str:
        """One ``x y`` decimal pair per line."""
        mp = self.ctx.mp
        digits = self.ctx.working_digits
        return ''.join(f"{mp.nstr(v.x, digits)} {mp.nstr(v.y, digits)}\n" for v in self.vertices)


def _pairs(vertices: Sequence[Vertex]) -> Iterable[Tuple[Vertex, Vertex]]:
    for i, p in enumerate(vertices):
        yield p, vertices[(i + 1) % len(vertices)]


def _signed_area(vertices: Sequence[Vertex]):
    total = 0
    for p, q in _pairs(vertices):
        total += p.x * q.y - q.x * p.y
    return total / 2


def vertices_from_text(text: str, ctx: PrecisionContext) -> List[Vertex]:
    """Parse one ``x y`` pair per non-empty line."""
    vertices = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GeometryError(f"Line {number}: expected 'x y', got {line!r}")
        vertices.append(Vertex(ctx.mpf(parts[0]), ctx.mpf(parts[1])))
    return vertices


def canonicalize(raw_vertices: Sequence[Any], ctx: PrecisionContext) -> CanonicalPolygon:
    """
    Move a polygon into canonical position.

    Translates V1 to the origin, rotates ∂Ω2 onto a vertical line at
    positive x, and mirrors y -> -y when the vertices run clockwise.

    Args:
        raw_vertices: Vertex objects or (x, y) pairs, non-analytic vertex first
        ctx: Precision context

    Returns:
        CanonicalPolygon with φ1, φs and Δφ computed
    """
    mp = ctx.mp
    points = [v if isinstance(v, Vertex) else Vertex(ctx.mpf(v[0]), ctx.mpf(v[1])) for v in raw_vertices]
    points = [Vertex(ctx.mpf(p.x), ctx.mpf(p.y)) for p in points]
    if len(points) < 3:
        raise GeometryError("A polygon needs at least three vertices")
    tol = ctx.epsilon * 100

    for p, q in _pairs(points):
        if mp.hypot(q.x - p.x, q.y - p.y) <= tol:
            raise GeometryError("Zero-length edge")

    origin = points[0]
    shifted = [Vertex(p.x - origin.x, p.y - origin.y) for p in points]
    if abs(_signed_area(shifted)) <= tol:
        raise GeometryError("Degenerate polygon (zero area)")

    v2, v3 = shifted[1], shifted[2]
    direction = mp.atan2(v3.y - v2.y, v3.x - v2.x)
    rotation = mp.pi / 2 - direction
    cos_r, sin_r = _exact_cos_sin(rotation, mp, tol)
    if v2.x * cos_r - v2.y * sin_r < 0:
        cos_r, sin_r = -cos_r, -sin_r
    rotated = [Vertex(p.x * cos_r - p.y * sin_r, p.x * sin_r + p.y * cos_r) for p in shifted]

    edge_x = (rotated[1].x + rotated[2].x) / 2
    if edge_x <= tol:
        raise GeometryError("Edge ∂Ω2 cannot be placed at positive x (its line passes through V1)")
    rotated[1] = Vertex(edge_x, rotated[1].y)
    rotated[2] = Vertex(edge_x, rotated[2].y)
    rotated[0] = Vertex(mp.zero, mp.zero)

    if _signed_area(rotated) < 0:
        rotated = [Vertex(p.x, -p.y) for p in rotated]

    phi1 = mp.atan2(rotated[1].y, rotated[1].x)
    phis = mp.atan2(rotated[-1].y, rotated[-1].x)
    delta_phi = phis - phi1
    if delta_phi <= 0:
        delta_phi += 2 * mp.pi
    if not (0 < delta_phi < 2 * mp.pi):
        raise GeometryError("Interior angle at V1 outside (0, 2π)")

    roles = [ADJACENT] + [POINT_MATCHED] * (len(rotated) - 2) + [ADJACENT]
    polygon = CanonicalPolygon(rotated, roles, phi1, phis, delta_phi, ctx)

    for vertex in rotated[2:-1]:
        angle = polygon.theta_tilde(vertex.x, vertex.y)
        if angle < -tol or angle > delta_phi + tol:
            raise GeometryError("A point-matched edge is not visible from V1 within [φ1, φs]")
    return polygon


def _exact_cos_sin(angle, mp, tol):
    """cos/sin that return exact values for multiples of π/2."""
    quarter = angle / (mp.pi / 2)
    nearest = int(mp.nint(quarter))
    if abs(quarter - nearest) <= tol:
        return [(1, 0), (0, 1), (-1, 0), (0, -1)][nearest % 4]
    return mp.cos(angle), mp.sin(angle)


def edge_line(polygon: CanonicalPolygon, edge: int) -> EdgeLine:
    """
    Normalized line of edge ∂Ω_edge with outward unit normal.

    For the counter-clockwise canonical polygon the outward normal is the
    edge direction turned clockwise.
    """
    mp = polygon.ctx.mp
    start, end = polygon.edge_endpoints(edge)
    dx, dy = end.x - start.x, end.y - start.y
    length = mp.hypot(dx, dy)
    if length <= polygon.ctx.epsilon:
        raise GeometryError(f"Edge {edge} has zero length")
    a, b = dy / length, -dx / length
    return EdgeLine(a, b, a * start.x + b * start.y)


# ---------------------------------------------------------------------------
# Matching-point distributions
# ---------------------------------------------------------------------------

def canonical_chebyshev(length: Number, n: int, ctx: PrecisionContext) -> List[Any]:
    """s_μ = (ℓ/2)[1 - cos((μ - 1/2)π/n)], μ = 1..n."""
    if n < 1:
        raise ConfigError("canonical_chebyshev needs n >= 1")
    mp = ctx.mp
    ell = ctx.mpf(length)
    if ell <= 0:
        raise ConfigError("canonical_chebyshev needs a positive length")
    return [ell / 2 * (1 - mp.cos((mu - mp.mpf(1) / 2) * mp.pi / n)) for mu in range(1, n + 1)]


def half_sine_nodes(y_max: Number, N: int, ctx: PrecisionContext) -> List[Any]:
    """
    y_ν = y_max·sin(νπ/(N+1)), ν = 1..N, in index order.

    The sequence rises then falls, so for N >= 2 it repeats values; see
    ``quarter_sine_nodes`` for the monotone placement used on polygons.
    """
    if N < 1:
        raise ConfigError("half_sine_nodes needs N >= 1")
    mp = ctx.mp
    top = ctx.mpf(y_max)
    return [top * mp.sin(nu * mp.pi / (N + 1)) for nu in range(1, N + 1)]


def quarter_sine_nodes(y_max: Number, N: int, ctx: PrecisionContext) -> List[Any]:
    """
    y_ν = y_max·sin((π/2)·ν/(N+1)), ν = 1..N.

    Strictly increasing; crowds toward y_max and spreads near y = 0.
    """
    if N < 1:
        raise ConfigError("quarter_sine_nodes needs N >= 1")
    mp = ctx.mp
    top = ctx.mpf(y_max)
    return [top * mp.sin(mp.pi / 2 * nu / (N + 1)) for nu in range(1, N + 1)]


def star_nodes(y_B: Number, y_C: Number, n2: int, ctx: PrecisionContext) -> List[Any]:
    """y_ν = ½{(y_C + y_B) + (y_C - y_B)·cos(νπ/(n2+1))}, ν = 1..n2."""
    if n2 < 1:
        raise ConfigError("star_nodes needs n2 >= 1")
    mp = ctx.mp
    b, c = ctx.mpf(y_B), ctx.mpf(y_C)
    if b == c:
        raise ConfigError("star_nodes needs distinct end points")
    return [((c + b) + (c - b) * mp.cos(nu * mp.pi / (n2 + 1))) / 2 for nu in range(1, n2 + 1)]


def cutsquare_nodes(N: int, ctx: PrecisionContext) -> List[Vertex]:
    """
    Matching points on the first-quadrant square of the cut-square.

    The first N/2 lie on x = 1/2 crowded toward both corners, the last
    N/2 on y = 1/2 crowded toward the corner (1/2, 1/2).
    """
    if N < 2 or N % 2:
        raise ConfigError(f"cutsquare_nodes needs an even N >= 2, got {N}")
    mp = ctx.mp
    half = mp.mpf(1) / 2
    n = N // 2
    points = []
    for mu in range(1, n + 1):
        y = (1 - mp.cos((mu - half) * mp.pi / n)) / 4
        points.append(Vertex(half, y))
    for mu in range(n + 1, N + 1):
        x = half * mp.sin((mu - half) * mp.pi / N)
        points.append(Vertex(x, half))
    return points


def equal_spaced_nodes(
    total_length: Number,
    N: int,
    include_endpoints: bool,
    ctx: PrecisionContext,
) -> List[Any]:
    """Uniform arclength positions over [0, total_length]."""
    if N < 1:
        raise ConfigError("equal_spaced_nodes needs N >= 1")
    total = ctx.mpf(total_length)
    if include_endpoints:
        if N == 1:
            return [total / 2]
        return [total * j / (N - 1) for j in range(N)]
    return [total * j / (N + 1) for j in range(1, N + 1)]


def points_along_edges(
    polygon: CanonicalPolygon,
    edges: Sequence[int],
    positions: Sequence[Any],
) -> List[MatchPoint]:
    """Place arclength positions along the concatenation of ``edges``."""
    lengths = [polygon.edge_length(e) for e in edges]
    tol = polygon.ctx.epsilon * 100
    points = []
    for s in positions:
        remaining = s
        for i, (edge, length) in enumerate(zip(edges, lengths)):
            if remaining <= length + tol or i == len(edges) - 1:
                if remaining > length + tol:
                    raise GeometryError("Arclength position beyond the matched boundary")
                points.append(polygon.point_on_edge(edge, min(remaining, length)))
                break
            remaining -= length
    return points


def points_at_heights(polygon: CanonicalPolygon, edge: int, heights: Sequence[Any]) -> List[MatchPoint]:
    """Points on a vertical edge at the given y-coordinates."""
    start, end = polygon.edge_endpoints(edge)
    if start.x != end.x:
        raise GeometryError(f"Edge {edge} is not vertical")
    return [MatchPoint(start.x, y, edge) for y in heights]


def validate_matching_set(polygon: CanonicalPolygon, matching: MatchingSet) -> None:
    """Every point on its edge line and no two points equal."""
    ctx = polygon.ctx
    tol = ctx.mp.mpf(10) ** (2 - ctx.working_digits)
    for point in matching.points:
        line = edge_line(polygon, point.edge)
        if abs(line.residual(point.x, point.y)) > tol:
            raise GeometryError(f"Matching point off edge {point.edge}")
    seen = set()
    for point in matching.points:
        key = (ctx.mp.nstr(point.x, ctx.working_digits - 2), ctx.mp.nstr(point.y, ctx.working_digits - 2))
        if key in seen:
            raise GeometryError("Duplicate matching point")
        seen.add(key)


def wavelength_gap_check(
    points: Sequence[Any],
    lam: Number,
    ctx: PrecisionContext,
    fraction: Optional[Number] = None,
) -> bool:
    """
    True iff every gap between consecutive points is below fraction·Λ,
    Λ = 2π/√λ the free wavelength.
    """
    mp = ctx.mp
    lam = ctx.mpf(lam)
    if lam <= 0:
        raise ConfigError("wavelength_gap_check needs λ > 0")
    fraction = ctx.mpf(fraction) if fraction is not None else mp.mpf(1) / 2
    if isinstance(points, MatchingSet):
        points = points.points
    wavelength = 2 * mp.pi / mp.sqrt(lam)
    largest = mp.zero
    for p, q in zip(points, points[1:]):
        largest = max(largest, mp.hypot(q.x - p.x, q.y - p.y))
    ok = largest < fraction * wavelength
    if not ok:
        logger.warning(
            f"Matching-point gap {mp.nstr(largest, 6)} exceeds {mp.nstr(fraction, 3)} of the "
            f"free wavelength {mp.nstr(wavelength, 6)} at λ={mp.nstr(lam, 10)}"
        )
    return ok
