"""
Matrix Rows

One row of the point-matching matrix per matching condition: a value at
an odd point, a normal derivative at an even point, a periodic relation
between ∂Ω2 and its rotated image, or an angular derivative at a vertex.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional

from point_matching.core.errors import ConfigError, DegenerateRowError, GeometryError
from point_matching.engine.expansion import ExpansionSpec
from point_matching.engine.geometry import EdgeLine


class RowKind(str, Enum):
    """Kinds of matching condition."""
    ODD_VALUE = 'odd_value'
    EVEN_NORMAL_DERIVATIVE = 'even_normal_derivative'
    PERIODIC_PAIR = 'periodic_pair'
    VERTEX_THETA_DERIVATIVE = 'vertex_theta_derivative'


@dataclass(frozen=True)
class RowPlanEntry:
    """
    One planned row: its kind, the point it is imposed at, and the edge
    the point lies on (None for vertex conditions).

    periodic_pair rows carry γ and the polygon order σ (α = 2π/σ).
    """
    kind: RowKind
    x: Any
    y: Any
    edge: Optional[int] = None
    gamma: Optional[int] = None
    sigma: Optional[int] = None


class RowBuilder(ABC):
    """
    Abstract base class for row builders.

    Subclasses compute the N entries of one row at a point; ``build``
    rejects rows that vanish identically.
    """

    kind: RowKind

    @abstractmethod
    def entries(self, spec: ExpansionSpec, entry: RowPlanEntry, lines: Dict[int, EdgeLine]) -> List[Any]:
        """Raw row entries, one per basis function."""
        pass

    def build(self, spec: ExpansionSpec, entry: RowPlanEntry, lines: Dict[int, EdgeLine]) -> List[Any]:
        row = self.entries(spec, entry, lines)
        threshold = spec.ctx.mp.mpf(10) ** (-spec.ctx.working_digits)
        if all(abs(value) <= threshold for value in row):
            mp = spec.ctx.mp
            raise DegenerateRowError(
                f"{self.kind.value} row at ({mp.nstr(entry.x, 8)}, {mp.nstr(entry.y, 8)}) vanishes identically"
            )
        return row

    def values(self, spec: ExpansionSpec, x, y, line: Optional[EdgeLine] = None) -> List[Any]:
        """Row at a bare point, for diagnostics off the row plan."""
        lines = {0: line} if line is not None else {}
        return self.build(spec, RowPlanEntry(self.kind, x, y, 0 if line is not None else None), lines)

    @staticmethod
    def polar(spec: ExpansionSpec, x, y):
        mp = spec.ctx.mp
        r = mp.hypot(x, y)
        if r == 0:
            raise GeometryError("Matching condition at the origin V1")
        return r, spec.angle(mp.atan2(y, x))


class OddValueRow(RowBuilder):
    """Entries J_{m_ν}(k r)·{sin | cos}(m_ν θ̃)."""

    kind = RowKind.ODD_VALUE

    def entries(self, spec, entry, lines):
        r, local = self.polar(spec, entry.x, entry.y)
        return [spec.radial(m, r) * spec.angular(m, local) for m in spec.orders]


class EvenNormalRow(RowBuilder):
    """
    Entries A·X + B·Y, the r²-scaled normal derivative of each basis
    function on the edge line A x + B y = C.

    With J = J_m(kr) and J1 = J_{m+1}(kr), for sine bases
        r²X = m[x sin - y cos]J - k r x sin·J1
        r²Y = m[x cos + y sin]J - k r y sin·J1
    and for cosine bases
        r²X = m[x cos + y sin]J - k r x cos·J1
        r²Y = m[-x sin + y cos]J - k r y cos·J1
    with arguments m θ̃.
    """

    kind = RowKind.EVEN_NORMAL_DERIVATIVE

    def entries(self, spec, entry, lines):
        if entry.edge not in lines:
            raise ConfigError(f"No edge line for edge {entry.edge}")
        line = lines[entry.edge]
        mp = spec.ctx.mp
        x, y = entry.x, entry.y
        r, local = self.polar(spec, x, y)
        kr = spec.k * r
        row = []
        for m in spec.orders:
            order = spec.ctx.mpf(m)
            j_m, j_next = spec.bessel.j_pair(m, kr)
            s, c = mp.sin(order * local), mp.cos(order * local)
            if spec.uses_sine:
                rx = order * (x * s - y * c) * j_m - kr * x * s * j_next
                ry = order * (x * c + y * s) * j_m - kr * y * s * j_next
            else:
                rx = order * (x * c + y * s) * j_m - kr * x * c * j_next
                ry = order * (-x * s + y * c) * j_m - kr * y * c * j_next
            row.append(line.A * rx + line.B * ry)
        return row


class PeriodicPairRow(RowBuilder):
    """Entries {(-1)^ν + cos(γα)}·J_{m_ν}(k r)·{sin | cos}(m_ν θ̃), α = 2π/σ."""

    kind = RowKind.PERIODIC_PAIR

    def entries(self, spec, entry, lines):
        if entry.gamma is None or entry.sigma is None:
            raise ConfigError("Periodic rows need γ and σ")
        mp = spec.ctx.mp
        r, local = self.polar(spec, entry.x, entry.y)
        rotation = mp.cos(entry.gamma * 2 * mp.pi / entry.sigma)
        row = []
        for nu, m in enumerate(spec.orders, start=1):
            factor = (1 if nu % 2 == 0 else -1) + rotation
            row.append(factor * spec.radial(m, r) * spec.angular(m, local))
        return row


class VertexThetaRow(RowBuilder):
    """Entries m_ν·J_{m_ν}(k r)·{cos | -sin}(m_ν θ̃), the angular derivative."""

    kind = RowKind.VERTEX_THETA_DERIVATIVE

    def entries(self, spec, entry, lines):
        r, local = self.polar(spec, entry.x, entry.y)
        return [spec.ctx.mpf(m) * spec.radial(m, r) * spec.angular_derivative(m, local)
                for m in spec.orders]


ROW_BUILDERS: Dict[RowKind, RowBuilder] = {
    builder.kind: builder
    for builder in (OddValueRow(), EvenNormalRow(), PeriodicPairRow(), VertexThetaRow())
}


def build_row(spec: ExpansionSpec, entry: RowPlanEntry, lines: Dict[int, EdgeLine]) -> List[Any]:
    """Dispatch one planned row to its builder."""
    try:
        builder = ROW_BUILDERS[RowKind(entry.kind)]
    except (KeyError, ValueError):
        raise ConfigError(f"Unknown row kind: {entry.kind}")
    return builder.build(spec, entry, lines)
