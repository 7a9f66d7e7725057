"""
Fourier-Bessel Expansion

m-value sequences for each symmetry class and evaluation of the basis
functions ψ_ν = J_{m_ν}(k r)·{sin | cos}(m_ν θ̃), which solve the
Helmholtz equation exactly in the sector φ1 <= θ <= φs.
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, List, Sequence

from point_matching.core.errors import ConfigError, DimensionError
from point_matching.core.precision import BesselEvaluator, PrecisionContext


class Parity(str, Enum):
    """Boundary parity of an edge: odd (Ψ = 0) or even (∂Ψ/∂n = 0)."""
    ODD = 'odd'
    EVEN = 'even'

    @classmethod
    def from_string(cls, value: str) -> 'Parity':
        try:
            return cls(value.lower())
        except ValueError:
            raise ConfigError(f"Unknown parity: {value}")


class MRule(str, Enum):
    """m-value generation rules."""
    GENERAL = 'general'
    LSHAPE = 'lshape'
    CUTSQUARE_A = 'cutsquare_A'
    CUTSQUARE_B = 'cutsquare_B'
    CUTSQUARE_C = 'cutsquare_C'
    CUTSQUARE_FULL = 'cutsquare_full'

    @classmethod
    def from_string(cls, value: str) -> 'MRule':
        for rule in cls:
            if rule.value.lower() == value.lower():
                return rule
        raise ConfigError(f"Unknown m-value rule: {value}")


# j mod 7 residues of each cut-square class, m = 4j/7
CUTSQUARE_RESIDUES = {
    MRule.CUTSQUARE_A: (1, 6),
    MRule.CUTSQUARE_B: (2, 5),
    MRule.CUTSQUARE_C: (3, 4),
}


@dataclass(frozen=True)
class ParityPair:
    """Parities of the adjacent edges ∂Ω1 and ∂Ωs."""
    first_adjacent: Parity
    last_adjacent: Parity

    @property
    def uses_sine(self) -> bool:
        return self.first_adjacent == Parity.ODD


def cutsquare_j(rule: MRule, nu: int) -> int:
    """ν-th positive j in the class (j = ν for the full sequence)."""
    if rule == MRule.CUTSQUARE_FULL:
        return nu
    residues = CUTSQUARE_RESIDUES[rule]
    return 7 * ((nu - 1) // 2) + residues[(nu - 1) % 2]


def m_value(rule: MRule, parity: ParityPair, delta_phi_pi: Fraction, nu: int) -> Fraction:
    """
    Exact m_ν for one rule.

    Args:
        rule: Generation rule
        parity: Adjacent-edge parities
        delta_phi_pi: Δφ as a rational multiple of π
        nu: 1-based index

    Returns:
        m_ν as a Fraction
    """
    if nu < 1:
        raise ConfigError("ν must be >= 1")
    rule = MRule(rule)
    if rule == MRule.GENERAL:
        base = 1 / Fraction(delta_phi_pi)
        odd_first = parity.first_adjacent == Parity.ODD
        odd_last = parity.last_adjacent == Parity.ODD
        if odd_first and odd_last:
            return base * nu
        if not odd_first and not odd_last:
            return base * (nu - 1)
        return base * (nu - Fraction(1, 2))
    if rule == MRule.LSHAPE:
        return Fraction(2, 3) * (2 * ((3 * nu) // 2) - 1)
    if rule in CUTSQUARE_RESIDUES or rule == MRule.CUTSQUARE_FULL:
        return Fraction(4 * cutsquare_j(rule, nu), 7)
    raise ConfigError(f"Unknown m-value rule: {rule}")


@dataclass
class MSequence:
    """Lazily generated, strictly increasing m-values."""
    rule: MRule
    delta_phi_pi: Fraction
    parity: ParityPair
    _cache: List[Fraction] = field(default_factory=list, repr=False, compare=False)

    def value(self, nu: int) -> Fraction:
        while len(self._cache) < nu:
            self._cache.append(m_value(self.rule, self.parity, self.delta_phi_pi, len(self._cache) + 1))
        return self._cache[nu - 1]

    def values(self, N: int) -> List[Fraction]:
        self.value(N)
        return list(self._cache[:N])


class ExpansionSpec:
    """
    Truncated Fourier-Bessel series of N terms at wavenumber k.

    Holds the Bessel evaluator so that Γ(m+1) is computed once per order
    for the whole assembly.
    """

    def __init__(self, m_sequence: MSequence, N: int, k, phi1, ctx: PrecisionContext,
                 bessel: BesselEvaluator = None):
        if N < 1:
            raise ConfigError("Expansion needs N >= 1")
        if k <= 0:
            raise ConfigError("Wavenumber must be positive")
        self.m_sequence = m_sequence
        self.N = N
        self.ctx = ctx
        self.k = ctx.mpf(k)
        self.phi1 = ctx.mpf(phi1)
        self.bessel = bessel or BesselEvaluator(ctx)
        self.orders: List[Fraction] = m_sequence.values(N)

    @property
    def uses_sine(self) -> bool:
        return self.m_sequence.parity.uses_sine

    def angle(self, theta):
        """θ̃ = θ - φ1 folded to be non-negative."""
        mp = self.ctx.mp
        local = theta - self.phi1
        if local < -self.ctx.epsilon * 100:
            local += 2 * mp.pi
        return local

    def angular(self, m, local_angle):
        """sin(m θ̃) or cos(m θ̃) by parity of ∂Ω1."""
        mp = self.ctx.mp
        arg = self.ctx.mpf(m) * local_angle
        return mp.sin(arg) if self.uses_sine else mp.cos(arg)

    def angular_derivative(self, m, local_angle):
        """d/dθ of the angular factor, without the factor m."""
        mp = self.ctx.mp
        arg = self.ctx.mpf(m) * local_angle
        return mp.cos(arg) if self.uses_sine else -mp.sin(arg)

    def radial(self, m, r):
        return self.bessel.j(m, self.k * r)


def basis_eval(spec: ExpansionSpec, nu: int, r, theta):
    """ψ_ν(k; r, θ) = J_{m_ν}(k r)·{sin | cos}(m_ν θ̃)."""
    if not 1 <= nu <= spec.N:
        raise DimensionError(f"ν={nu} outside 1..{spec.N}")
    m = spec.orders[nu - 1]
    r = spec.ctx.mpf(r)
    return spec.radial(m, r) * spec.angular(m, spec.angle(spec.ctx.mpf(theta)))


def expansion_eval(spec: ExpansionSpec, coefficients: Sequence[Any], r, theta):
    """Ψ^[N](k; r, θ) = Σ c_ν ψ_ν."""
    if len(coefficients) != spec.N:
        raise DimensionError(f"Expected {spec.N} coefficients, got {len(coefficients)}")
    total = spec.ctx.mp.zero
    for nu, c in enumerate(coefficients, start=1):
        if c:
            total += spec.ctx.mpf(c) * basis_eval(spec, nu, r, theta)
    return total
