"""
Shapes Catalog

Concrete (shape, symmetry class, boundary kind) definitions: the
symmetry-reduced region, parities, m-value rule, matching-point
distribution, row plan, periodic factor and precision multiplier.

Shapes:
- lshape: the L-shaped membrane, half across its diagonal symmetry line
- cutsquare: unit square with a 45° notch cut to its center
- star: the five-pointed star built on a unit-edged pentagon
- polygon<σ>: regular σ-gon, fundamental triangle or kite
"""
import logging
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from point_matching.core.errors import ConfigError, NotInCatalogError
from point_matching.core.precision import PrecisionContext
from point_matching.engine.expansion import MRule, MSequence, Parity, ParityPair
from point_matching.engine.geometry import (
    CanonicalPolygon,
    MatchPoint,
    MatchingSet,
    canonical_chebyshev,
    canonicalize,
    cutsquare_nodes,
    equal_spaced_nodes,
    points_along_edges,
    points_at_heights,
    quarter_sine_nodes,
    star_nodes,
    validate_matching_set,
)
from point_matching.engine.rows import RowKind, RowPlanEntry

logger = logging.getLogger(__name__)


class BoundaryKind(str, Enum):
    """Boundary condition on the physical edges."""
    DIRICHLET = 'dirichlet'
    NEUMANN = 'neumann'

    @classmethod
    def from_string(cls, value: str) -> 'BoundaryKind':
        aliases = {'d': cls.DIRICHLET, 'dirichlet': cls.DIRICHLET,
                   'n': cls.NEUMANN, 'neumann': cls.NEUMANN}
        try:
            return aliases[value.lower()]
        except KeyError:
            raise ConfigError(f"Unknown boundary kind: {value}")

    @property
    def parity(self) -> Parity:
        return Parity.ODD if self == BoundaryKind.DIRICHLET else Parity.EVEN


class UnfoldMode(str, Enum):
    """How values on the full shape are recovered from Ω."""
    NONE = 'none'
    REFLECT = 'reflect'
    ROTATE = 'rotate'


@dataclass
class DihedralInfo:
    """Bookkeeping for the dihedral group D_σ."""
    sigma: int
    alpha: Any
    beta: Any
    eta1: int
    eta2: int

    @classmethod
    def for_sides(cls, sigma: int, ctx: PrecisionContext) -> 'DihedralInfo':
        if sigma < 3:
            raise ConfigError(f"A polygon needs σ >= 3, got {sigma}")
        mp = ctx.mp
        eta1 = 4 if sigma % 2 == 0 else 2
        return cls(
            sigma=sigma,
            alpha=2 * mp.pi / sigma,
            beta=(sigma - 2) * mp.pi / sigma,
            eta1=eta1,
            eta2=(2 * sigma - eta1) // 4,
        )

    def class_labels(self) -> List[str]:
        labels = ['S', 'A']
        if self.sigma % 2 == 0:
            labels += ["S'", "A'"]
        for gamma in range(1, self.eta2 + 1):
            letter = degenerate_letter(gamma)
            labels += [f'{letter}_e', f'{letter}_o']
        return labels


def degenerate_letter(gamma: int) -> str:
    """B, C, D, ... for γ = 1, 2, 3, ...; G<γ> past Z."""
    if gamma <= 25:
        return chr(ord('A') + gamma)
    return f'G{gamma}'


def gamma_of(letter: str) -> int:
    if letter.startswith('G') and letter[1:].isdigit():
        return int(letter[1:])
    if len(letter) == 1 and 'B' <= letter <= 'Z':
        return ord(letter) - ord('A')
    raise NotInCatalogError(f"Not a degenerate class letter: {letter}")


@dataclass
class ShapeClassDescriptor:
    """
    A (shape, symmetry class, boundary kind) triple, ready to assemble.

    Attributes:
        shape_id: Catalog shape name
        class_id: Symmetry class label
        boundary_kind: Dirichlet or Neumann
        region: Symmetry-reduced polygon Ω in canonical position
        parity: Parities of ∂Ω1 and ∂Ωs
        m_rule: m-value rule
        delta_phi_pi: Δφ as a rational multiple of π
        edge_parity: Parity of each point-matched edge that carries rows
        distribution_id: Matching-point distribution name
        precision_multiplier: Digits per matching condition
        N_constraint: 'any', 'even' or 'custom'
        N_multiple: N must be a multiple of this
        N_min: Smallest admissible N
        delta_N: Proper increment
        weyl_area: Area that sets the eigenvalue density of the class
        matched_segments: (edge, s_start, s_end) pieces carrying matching points
        check_segments: Point-matched pieces not used for matching
        gamma: Periodic factor index for kite/arrowhead classes
        sigma: Dihedral order for periodic classes
        symmetry_edges: Mirror edges of Ω and their parity (for unfolding)
        unfold_mode: How to extend values to the full shape
        q_parity: 'even' or 'odd' member of a degenerate pair
        partner_of: Class solved in place of this one (degenerate odd members)
        alias: Alternative label (hexagon classes)
    """
    shape_id: str
    class_id: str
    boundary_kind: BoundaryKind
    region: CanonicalPolygon
    parity: ParityPair
    m_rule: MRule
    delta_phi_pi: Fraction
    edge_parity: Dict[int, Parity]
    distribution_id: str
    precision_multiplier: Fraction
    N_constraint: str
    N_multiple: int
    N_min: int
    delta_N: int
    weyl_area: Any
    matched_segments: List[Tuple[int, Any, Any]]
    check_segments: List[Tuple[int, Any, Any]] = field(default_factory=list)
    gamma: Optional[int] = None
    sigma: Optional[int] = None
    symmetry_edges: Dict[int, Parity] = field(default_factory=dict)
    unfold_mode: UnfoldMode = UnfoldMode.NONE
    q_parity: str = 'even'
    partner_of: Optional[str] = None
    alias: Optional[str] = None
    distribution: Callable = field(default=None, repr=False)

    @property
    def ctx(self) -> PrecisionContext:
        return self.region.ctx

    @property
    def is_periodic(self) -> bool:
        return self.gamma is not None

    def m_sequence(self) -> MSequence:
        return MSequence(self.m_rule, self.delta_phi_pi, self.parity)

    def check_N(self, N: int) -> None:
        if N < self.N_min:
            raise ConfigError(f"{self.label}: N={N} below the minimum {self.N_min}")
        if N % self.N_multiple:
            raise ConfigError(f"{self.label}: N={N} must be a multiple of {self.N_multiple}")

    @property
    def label(self) -> str:
        return f"{self.shape_id}/{self.class_id}/{self.boundary_kind.value}"

    def matching(self, N: int) -> Tuple[MatchingSet, List[RowPlanEntry]]:
        """Matching points for N conditions plus any vertex-condition rows."""
        self.check_N(N)
        points, vertex_rows = self.distribution(self, N)
        counts = [sum(1 for p in points if p.edge == e) for e in sorted({p.edge for p in points})]
        matching = MatchingSet(points, counts, self.distribution_id)
        validate_matching_set(self.region, matching)
        return matching, vertex_rows

    def row_plan(self, N: int) -> List[RowPlanEntry]:
        """
        Rows in order: ∂Ω2 points, then ∂Ω3, ..., vertex conditions last.
        Periodic classes list all periodic rows before the even rows.
        """
        matching, vertex_rows = self.matching(N)
        points = sorted(matching.points, key=lambda p: p.edge)
        if self.is_periodic:
            plan = [RowPlanEntry(RowKind.PERIODIC_PAIR, p.x, p.y, p.edge, self.gamma, self.sigma)
                    for p in points]
            plan += [RowPlanEntry(RowKind.EVEN_NORMAL_DERIVATIVE, p.x, p.y, p.edge) for p in points]
        else:
            plan = []
            for p in points:
                kind = (RowKind.ODD_VALUE if self.edge_parity[p.edge] == Parity.ODD
                        else RowKind.EVEN_NORMAL_DERIVATIVE)
                plan.append(RowPlanEntry(kind, p.x, p.y, p.edge))
        plan += vertex_rows
        if len(plan) != N:
            raise ConfigError(f"{self.label}: row plan has {len(plan)} rows for N={N}")
        return plan

    def summary(self) -> Dict[str, Any]:
        mp = self.ctx.mp
        return {
            'shape': self.shape_id,
            'class': self.class_id,
            'boundary_kind': self.boundary_kind.value,
            'delta_phi': f"{self.delta_phi_pi}π",
            'parity': f"{self.parity.first_adjacent.value}/{self.parity.last_adjacent.value}",
            'm_rule': self.m_rule.value,
            'distribution': self.distribution_id,
            'multiplier': str(float(self.precision_multiplier)),
            'delta_N': self.delta_N,
            'gamma': self.gamma,
            'alias': self.alias or '',
            'area': mp.nstr(self.region.area, 12),
        }


# ---------------------------------------------------------------------------
# Matching-point distributions
# ---------------------------------------------------------------------------

def _segment_lengths(desc: ShapeClassDescriptor) -> List[Any]:
    return [end - start for _, start, end in desc.matched_segments]


def per_edge_chebyshev(desc: ShapeClassDescriptor, N: int):
    """Canonical Chebyshev nodes on each matched segment, counts ∝ length."""
    lengths = _segment_lengths(desc)
    total = sum(lengths)
    points = []
    for (edge, start, end), length in zip(desc.matched_segments, lengths):
        count = int(desc.ctx.mp.nint(N * length / total))
        for s in canonical_chebyshev(length, count, desc.ctx):
            points.append(desc.region.point_on_edge(edge, start + s))
    return points, []


def uniform_interior(desc: ShapeClassDescriptor, N: int):
    """N equal-spaced interior points over the concatenated matched boundary."""
    total = sum(_segment_lengths(desc))
    edges = [edge for edge, _, _ in desc.matched_segments]
    positions = equal_spaced_nodes(total, N, False, desc.ctx)
    return points_along_edges(desc.region, edges, positions), []


def _vertex_theta_rows(desc: ShapeClassDescriptor):
    v2, v3 = desc.region.vertices[1], desc.region.vertices[2]
    return [
        RowPlanEntry(RowKind.VERTEX_THETA_DERIVATIVE, v2.x, v2.y),
        RowPlanEntry(RowKind.VERTEX_THETA_DERIVATIVE, v3.x, v3.y),
    ]


def fhm_positions(desc: ShapeClassDescriptor, N: int, far_edge: bool = False) -> List[Any]:
    """
    Arclength positions of the N-2 value points, measured from V2.

    The spacing is h = 2|V2V3|/(N-2). The default layout runs
    s = h, 2h, ..., 2|V2V3| from V2 past V3 to the midpoint of V3V4; the
    far-edge layout runs s = |V2V3| + j h, j = 0..N-3, along V3V4 only.
    Both put a value point on V3 and neither reaches V4.
    """
    if N < 4 or N % 2:
        raise ConfigError(f"FHM layouts need even N >= 4, got {N}")
    leg = desc.region.edge_length(desc.matched_segments[0][0])
    spacing = 2 * leg / (N - 2)
    if far_edge:
        return [leg + spacing * j for j in range(N - 2)]
    return [spacing * j for j in range(1, N - 1)]


def fhm_points(desc: ShapeClassDescriptor, N: int):
    """θ-derivative rows at V2 and V3 plus N-2 value points at s = 2j/(N-2)."""
    edges = [edge for edge, _, _ in desc.matched_segments]
    points = points_along_edges(desc.region, edges, fhm_positions(desc, N))
    return points, _vertex_theta_rows(desc)


def fhm_far_edge(desc: ShapeClassDescriptor, N: int):
    """θ-derivative rows at V2 and V3 plus N-2 value points from V3 along V3V4."""
    edges = [edge for edge, _, _ in desc.matched_segments]
    points = points_along_edges(desc.region, edges, fhm_positions(desc, N, far_edge=True))
    return points, _vertex_theta_rows(desc)


def cutsquare_points(desc: ShapeClassDescriptor, N: int):
    vertices = cutsquare_nodes(N, desc.ctx)
    half = N // 2
    points = [MatchPoint(v.x, v.y, 2) for v in vertices[:half]]
    points += [MatchPoint(v.x, v.y, 3) for v in vertices[half:]]
    return points, []


def _rows_per_point(desc: ShapeClassDescriptor, N: int) -> int:
    return N // 2 if desc.is_periodic else N


def star_points(desc: ShapeClassDescriptor, N: int):
    """Chebyshev-like nodes on ∂Ω2, listed from V2 toward V3."""
    v2, v3 = desc.region.vertices[1], desc.region.vertices[2]
    heights = star_nodes(v2.y, v3.y, _rows_per_point(desc, N), desc.ctx)
    return points_at_heights(desc.region, 2, list(reversed(heights))), []


def sine_points(desc: ShapeClassDescriptor, N: int):
    """Sine-crowded nodes on the apothem, denser toward the polygon center."""
    apothem = desc.region.edge_length(2)
    positions = quarter_sine_nodes(apothem, _rows_per_point(desc, N), desc.ctx)
    return points_along_edges(desc.region, [2], positions), []


DISTRIBUTION_FUNCTIONS: Dict[str, Callable] = {
    'canonical_chebyshev': per_edge_chebyshev,
    'equal_spaced': uniform_interior,
    'fhm': fhm_points,
    'fhm_far_edge': fhm_far_edge,
    'cutsquare': cutsquare_points,
    'star_chebyshev': star_points,
    'half_sine': sine_points,
}


# ---------------------------------------------------------------------------
# Shapes
# ---------------------------------------------------------------------------

class BaseShape(ABC):
    """
    Abstract base class for cataloged shapes.

    Implementations list their classes and build descriptors at a given
    precision.
    """

    name: str = 'base'
    description: str = 'Base shape'
    # Distributions a user may select with --points
    DISTRIBUTIONS: Tuple[str, ...] = ()

    def __init__(self, ctx: Optional[PrecisionContext] = None):
        self.ctx = ctx

    @abstractmethod
    def classes(self) -> List[Tuple[str, BoundaryKind]]:
        """(class, boundary kind) pairs in catalog order."""
        pass

    @abstractmethod
    def descriptor(self, class_id: str, boundary_kind: BoundaryKind,
                   distribution: Optional[str] = None) -> ShapeClassDescriptor:
        """Build the descriptor for one class."""
        pass

    def _require_ctx(self) -> PrecisionContext:
        if self.ctx is None:
            raise ConfigError(f"{self.name}: a precision context is needed to build geometry")
        return self.ctx

    def _check_class(self, class_id: str, boundary_kind: BoundaryKind) -> None:
        if (class_id, boundary_kind) not in self.classes():
            raise NotInCatalogError(f"({self.name}, {class_id}, {boundary_kind.value}) is not in the catalog")

    def _pick_distribution(self, requested: Optional[str], default: str) -> str:
        chosen = requested or default
        if chosen not in self.DISTRIBUTIONS:
            raise ConfigError(f"{self.name}: distribution '{chosen}' not available "
                              f"(choose from {', '.join(self.DISTRIBUTIONS)})")
        return chosen


class LShape(BaseShape):
    """
    L-shaped membrane [-1,1]² minus the first quadrant, reduced across
    its diagonal: V1=(0,0), V2=(1,0), V3=(1,1), V4=(-1,1).
    """

    name = 'lshape'
    description = 'L-shaped membrane, lowest symmetric Dirichlet tower'
    DISTRIBUTIONS = ('canonical_chebyshev', 'equal_spaced', 'fhm', 'fhm_far_edge')

    def classes(self):
        return [('lowest_dirichlet_sym', BoundaryKind.DIRICHLET)]

    def descriptor(self, class_id, boundary_kind, distribution=None):
        self._check_class(class_id, boundary_kind)
        ctx = self._require_ctx()
        mp = ctx.mp
        distribution_id = self._pick_distribution(distribution, 'canonical_chebyshev')
        region = canonicalize([(0, 0), (1, 0), (1, 1), (-1, 1)], ctx)
        if distribution_id == 'canonical_chebyshev':
            n_multiple, n_min, delta_n, constraint = 3, 3, 3, 'custom'
        elif distribution_id == 'equal_spaced':
            n_multiple, n_min, delta_n, constraint = 1, 1, 1, 'any'
        else:
            n_multiple, n_min, delta_n, constraint = 2, 4, 2, 'even'
        return ShapeClassDescriptor(
            shape_id=self.name,
            class_id=class_id,
            boundary_kind=boundary_kind,
            region=region,
            parity=ParityPair(Parity.ODD, Parity.EVEN),
            m_rule=MRule.LSHAPE,
            delta_phi_pi=Fraction(3, 4),
            edge_parity={2: Parity.ODD, 3: Parity.ODD},
            distribution_id=distribution_id,
            precision_multiplier=Fraction(6, 5),
            N_constraint=constraint,
            N_multiple=n_multiple,
            N_min=n_min,
            delta_N=delta_n,
            weyl_area=region.area,
            matched_segments=[(2, mp.zero, mp.one), (3, mp.zero, mp.mpf(2))],
            symmetry_edges={4: Parity.EVEN},
            unfold_mode=UnfoldMode.REFLECT,
            distribution=DISTRIBUTION_FUNCTIONS[distribution_id],
        )


class CutSquare(BaseShape):
    """
    Unit square [-1/2,1/2]² minus the notch (0,0),(1/2,0),(1/2,-1/2).

    Classes A, B, C take m = 4j/7 with j mod 7 in {1,6}, {2,5}, {3,4} and
    match only on the first-quadrant square; class ``full`` takes every j
    and matches on all four non-adjacent edges.
    """

    name = 'cutsquare'
    description = 'Cut-square hexagon with a 7π/4 re-entrant vertex'
    DISTRIBUTIONS = ('cutsquare', 'canonical_chebyshev')
    CLASS_RULES = {
        'A': MRule.CUTSQUARE_A,
        'B': MRule.CUTSQUARE_B,
        'C': MRule.CUTSQUARE_C,
        'full': MRule.CUTSQUARE_FULL,
    }

    def classes(self):
        return [(c, kind) for kind in BoundaryKind for c in self.CLASS_RULES]

    def descriptor(self, class_id, boundary_kind, distribution=None):
        self._check_class(class_id, boundary_kind)
        ctx = self._require_ctx()
        mp = ctx.mp
        half = mp.mpf(1) / 2
        region = canonicalize(
            [(0, 0), (half, 0), (half, half), (-half, half), (-half, -half), (half, -half)], ctx
        )
        parity = boundary_kind.parity
        matched = {2: parity, 3: parity, 4: parity, 5: parity}
        quadrant = [(2, mp.zero, half), (3, mp.zero, half)]
        rest = [(3, half, mp.one), (4, mp.zero, mp.one), (5, mp.zero, mp.one)]
        if class_id == 'full':
            distribution_id = self._pick_distribution(distribution, 'canonical_chebyshev')
            if distribution_id != 'canonical_chebyshev':
                raise ConfigError("The full cut-square sequence uses canonical_chebyshev points")
            segments = [(2, mp.zero, half), (3, mp.zero, mp.one), (4, mp.zero, mp.one), (5, mp.zero, mp.one)]
            checks, n_multiple, constraint, weyl = [], 7, 'custom', region.area
        else:
            distribution_id = self._pick_distribution(distribution, 'cutsquare')
            if distribution_id != 'cutsquare':
                raise ConfigError("Cut-square classes A/B/C use the cutsquare distribution")
            segments, checks, n_multiple, constraint, weyl = quadrant, rest, 2, 'even', mp.mpf(1) / 4
        return ShapeClassDescriptor(
            shape_id=self.name,
            class_id=class_id,
            boundary_kind=boundary_kind,
            region=region,
            parity=ParityPair(parity, parity),
            m_rule=self.CLASS_RULES[class_id],
            delta_phi_pi=Fraction(7, 4),
            edge_parity=matched,
            distribution_id=distribution_id,
            precision_multiplier=Fraction(6, 5),
            N_constraint=constraint,
            N_multiple=n_multiple,
            N_min=n_multiple,
            delta_N=n_multiple,
            weyl_area=weyl,
            matched_segments=segments,
            check_segments=checks,
            unfold_mode=UnfoldMode.NONE,
            distribution=DISTRIBUTION_FUNCTIONS[distribution_id],
        )


class Star(BaseShape):
    """
    Five-pointed star on a unit-edged pentagon.

    S and A use the fundamental triangle (inner vertex, star point,
    center); B_e and C_e use the arrowhead, the triangle doubled through
    its center-to-inner-vertex edge, with periodic rows γ = 1, 2.
    """

    name = 'star'
    description = 'Five-pointed star (pentagram outline) on a unit-edged pentagon'
    DISTRIBUTIONS = ('star_chebyshev', 'canonical_chebyshev')
    CLASSES = ('S', 'A', 'B_e', 'C_e')

    def classes(self):
        return [(c, kind) for kind in BoundaryKind for c in self.CLASSES]

    def _raw(self):
        mp = self.ctx.mp
        R = 1 / (2 * mp.sin(mp.pi / 5))
        inner = R * mp.cos(2 * mp.pi / 5) / mp.cos(mp.pi / 5)
        I = (inner * mp.cos(mp.pi / 5), inner * mp.sin(mp.pi / 5))
        P = (R, mp.zero)
        O = (mp.zero, mp.zero)
        P2 = (R * mp.cos(2 * mp.pi / 5), R * mp.sin(2 * mp.pi / 5))
        return I, P, O, P2

    def descriptor(self, class_id, boundary_kind, distribution=None):
        self._check_class(class_id, boundary_kind)
        ctx = self._require_ctx()
        mp = ctx.mp
        distribution_id = self._pick_distribution(distribution, 'star_chebyshev')
        bc = boundary_kind.parity
        I, P, O, P2 = self._raw()
        if class_id in ('S', 'A'):
            line = Parity.EVEN if class_id == 'S' else Parity.ODD
            region = canonicalize([I, P, O], ctx)
            return ShapeClassDescriptor(
                shape_id=self.name, class_id=class_id, boundary_kind=boundary_kind,
                region=region,
                parity=ParityPair(bc, line),
                m_rule=MRule.GENERAL,
                delta_phi_pi=Fraction(7, 10),
                edge_parity={2: line},
                distribution_id=distribution_id,
                precision_multiplier=Fraction(6, 5),
                N_constraint='any', N_multiple=1, N_min=1, delta_N=1,
                weyl_area=region.area,
                matched_segments=[(2, mp.zero, region.edge_length(2))],
                symmetry_edges={2: line, 3: line},
                unfold_mode=UnfoldMode.REFLECT,
                distribution=DISTRIBUTION_FUNCTIONS[distribution_id],
            )
        region = canonicalize([I, P, O, P2], ctx)
        return ShapeClassDescriptor(
            shape_id=self.name, class_id=class_id, boundary_kind=boundary_kind,
            region=region,
            parity=ParityPair(bc, bc),
            m_rule=MRule.GENERAL,
            delta_phi_pi=Fraction(7, 5),
            edge_parity={2: Parity.EVEN},
            distribution_id=distribution_id,
            precision_multiplier=Fraction(6, 5),
            N_constraint='even', N_multiple=2, N_min=2, delta_N=2,
            weyl_area=region.area,
            matched_segments=[(2, mp.zero, region.edge_length(2))],
            gamma=gamma_of(class_id[0]),
            sigma=5,
            symmetry_edges={2: Parity.EVEN},
            unfold_mode=UnfoldMode.ROTATE,
            distribution=DISTRIBUTION_FUNCTIONS[distribution_id],
        )


# Cureton-Kuttler labels of the hexagon classes
HEXAGON_ALIASES = {
    'A': 'S0', 'B_e': 'S1', 'C_o': 'S2', "S'": 'S3',
    'S': 'C0', 'B_o': 'C1', 'C_e': 'C2', "A'": 'C3',
}

SCALES = ('unit_edge', 'area_pi')


class RegularPolygon(BaseShape):
    """
    Regular σ-gon.

    Non-degenerate classes (S, A and, for even σ, S', A') use the
    fundamental triangle (vertex, edge midpoint, center); degenerate
    pairs use the kite, the triangle doubled through its circumradius,
    with periodic rows cos(γα), γ = 1..η2.
    """

    name = 'polygon'
    description = 'Regular polygon'
    DISTRIBUTIONS = ('half_sine', 'canonical_chebyshev')
    MIN_SIDES = 5

    # (apothem, circumradius) parity of each non-degenerate class
    LINE_PARITIES = {
        'S': (Parity.EVEN, Parity.EVEN),
        'A': (Parity.ODD, Parity.ODD),
        "S'": (Parity.EVEN, Parity.ODD),
        "A'": (Parity.ODD, Parity.EVEN),
    }

    def __init__(self, sigma: int, ctx: Optional[PrecisionContext] = None, scale: str = 'unit_edge'):
        super().__init__(ctx)
        if sigma < self.MIN_SIDES:
            raise NotInCatalogError(f"Regular polygons start at σ={self.MIN_SIDES}; got {sigma}")
        if scale not in SCALES:
            raise ConfigError(f"Unknown scale: {scale}")
        self.sigma = sigma
        self.scale = scale
        self.name = f'polygon{sigma}'
        self.description = f'Regular {sigma}-gon ({scale.replace("_", " ")})'

    def dihedral(self) -> DihedralInfo:
        return DihedralInfo.for_sides(self.sigma, self._require_ctx())

    def class_labels(self) -> List[str]:
        eta1 = 4 if self.sigma % 2 == 0 else 2
        eta2 = (2 * self.sigma - eta1) // 4
        labels = ['S', 'A'] + (["S'", "A'"] if self.sigma % 2 == 0 else [])
        for gamma in range(1, eta2 + 1):
            letter = degenerate_letter(gamma)
            labels += [f'{letter}_e', f'{letter}_o']
        return labels

    def classes(self):
        return [(c, kind) for kind in BoundaryKind for c in self.class_labels()]

    def circumradius(self):
        mp = self._require_ctx().mp
        if self.scale == 'area_pi':
            return mp.sqrt(2 * mp.pi / (self.sigma * mp.sin(2 * mp.pi / self.sigma)))
        return 1 / (2 * mp.sin(mp.pi / self.sigma))

    def descriptor(self, class_id, boundary_kind, distribution=None):
        self._check_class(class_id, boundary_kind)
        ctx = self._require_ctx()
        mp = ctx.mp
        sigma = self.sigma
        distribution_id = self._pick_distribution(distribution, 'half_sine')
        bc = boundary_kind.parity
        R = self.circumradius()
        apothem = R * mp.cos(mp.pi / sigma)
        vertex = (R, mp.zero)
        midpoint = (apothem * mp.cos(mp.pi / sigma), apothem * mp.sin(mp.pi / sigma))
        center = (mp.zero, mp.zero)
        multiplier = Fraction(17, 10) if sigma <= 10 else Fraction(7, 5)
        alias = HEXAGON_ALIASES.get(class_id) if sigma == 6 else None

        if class_id in self.LINE_PARITIES:
            apothem_parity, radius_parity = self.LINE_PARITIES[class_id]
            region = canonicalize([vertex, midpoint, center], ctx)
            return ShapeClassDescriptor(
                shape_id=self.name, class_id=class_id, boundary_kind=boundary_kind,
                region=region,
                parity=ParityPair(bc, radius_parity),
                m_rule=MRule.GENERAL,
                delta_phi_pi=Fraction(sigma - 2, 2 * sigma),
                edge_parity={2: apothem_parity},
                distribution_id=distribution_id,
                precision_multiplier=multiplier,
                N_constraint='any', N_multiple=1, N_min=1, delta_N=1,
                weyl_area=region.area,
                matched_segments=[(2, mp.zero, region.edge_length(2))],
                symmetry_edges={2: apothem_parity, 3: radius_parity},
                unfold_mode=UnfoldMode.REFLECT,
                alias=alias,
                distribution=DISTRIBUTION_FUNCTIONS[distribution_id],
            )

        letter, _, member = class_id.partition('_')
        mirrored = (midpoint[0], -midpoint[1])
        region = canonicalize([vertex, midpoint, center, mirrored], ctx)
        return ShapeClassDescriptor(
            shape_id=self.name, class_id=class_id, boundary_kind=boundary_kind,
            region=region,
            parity=ParityPair(bc, bc),
            m_rule=MRule.GENERAL,
            delta_phi_pi=Fraction(sigma - 2, sigma),
            edge_parity={2: Parity.EVEN},
            distribution_id=distribution_id,
            precision_multiplier=multiplier,
            N_constraint='even', N_multiple=2, N_min=2, delta_N=2,
            weyl_area=region.area,
            matched_segments=[(2, mp.zero, region.edge_length(2))],
            gamma=gamma_of(letter),
            sigma=sigma,
            symmetry_edges={2: Parity.EVEN},
            unfold_mode=UnfoldMode.ROTATE,
            q_parity='odd' if member == 'o' else 'even',
            partner_of=f'{letter}_e' if member == 'o' else None,
            alias=alias,
            distribution=DISTRIBUTION_FUNCTIONS[distribution_id],
        )


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

CATALOG_POLYGON_SIDES = (5, 6, 7, 8, 9, 10)

_POLYGON_PATTERN = re.compile(r'^(?:regular_)?polygon\(?(\d+)\)?$')


def shape_for(shape: str, ctx: Optional[PrecisionContext] = None, scale: str = 'unit_edge') -> BaseShape:
    """Resolve a shape name (lshape, cutsquare, star, polygon<σ>)."""
    key = shape.strip().lower()
    if key == 'lshape':
        return LShape(ctx)
    if key == 'cutsquare':
        return CutSquare(ctx)
    if key == 'star':
        return Star(ctx)
    match = _POLYGON_PATTERN.match(key)
    if match:
        return RegularPolygon(int(match.group(1)), ctx, scale=scale)
    raise NotInCatalogError(f"Unknown shape: {shape}")


def descriptor(
    shape: str,
    class_id: str,
    boundary_kind,
    ctx: PrecisionContext,
    scale: str = 'unit_edge',
    distribution: Optional[str] = None,
) -> ShapeClassDescriptor:
    """
    Build a fully populated descriptor at the context's precision.

    Args:
        shape: Shape name
        class_id: Symmetry class
        boundary_kind: BoundaryKind or its name
        ctx: Precision context for coordinates
        scale: Regular polygons only: unit_edge or area_pi
        distribution: Override of the default matching-point distribution
    """
    if not isinstance(boundary_kind, BoundaryKind):
        boundary_kind = BoundaryKind.from_string(boundary_kind)
    built = shape_for(shape, ctx, scale).descriptor(class_id, boundary_kind, distribution)
    logger.debug(f"Built descriptor {built.label} ({built.distribution_id})")
    return built


def list_catalog() -> List[Tuple[str, str, str]]:
    """Deterministic listing of every (shape, class, boundary kind)."""
    shapes: List[BaseShape] = [LShape(), CutSquare(), Star()]
    shapes += [RegularPolygon(sigma) for sigma in CATALOG_POLYGON_SIDES]
    return [(s.name, class_id, kind.value) for s in shapes for class_id, kind in s.classes()]
