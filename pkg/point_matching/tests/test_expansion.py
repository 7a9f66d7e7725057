"""
Expansion Tests

Unit tests for the m-value rules and the Fourier-Bessel basis functions.
"""
from fractions import Fraction

import mpmath
from django.test import SimpleTestCase

from point_matching.core.errors import ConfigError, DimensionError
from point_matching.core.precision import PrecisionContext
from point_matching.engine.expansion import (
    ExpansionSpec,
    MRule,
    MSequence,
    Parity,
    ParityPair,
    basis_eval,
    expansion_eval,
    m_value,
)

ODD_EVEN = ParityPair(Parity.ODD, Parity.EVEN)
ODD_ODD = ParityPair(Parity.ODD, Parity.ODD)
EVEN_EVEN = ParityPair(Parity.EVEN, Parity.EVEN)


class MValueTestCase(SimpleTestCase):
    """Tests for the m-value generation rules."""

    def test_lshape_rule_skips_multiples_of_two(self):
        """Test the L-shape rule gives 2/3, 10/3, 14/3, 22/3."""
        values = MSequence(MRule.LSHAPE, Fraction(3, 4), ODD_EVEN).values(4)
        self.assertEqual(values, [Fraction(2, 3), Fraction(10, 3), Fraction(14, 3), Fraction(22, 3)])

    def test_general_rule_by_parity(self):
        """Test the three parity cases of the general rule at Δφ = 3π/4."""
        self.assertEqual(m_value(MRule.GENERAL, ODD_ODD, Fraction(3, 4), 2), Fraction(8, 3))
        self.assertEqual(m_value(MRule.GENERAL, EVEN_EVEN, Fraction(3, 4), 1), 0)
        self.assertEqual(m_value(MRule.GENERAL, ODD_EVEN, Fraction(3, 4), 1), Fraction(2, 3))

    def test_cutsquare_class_residues(self):
        """Test class A uses j ≡ ±1 mod 7."""
        values = MSequence(MRule.CUTSQUARE_A, Fraction(7, 4), ODD_ODD).values(4)
        self.assertEqual(values, [Fraction(4, 7), Fraction(24, 7), Fraction(32, 7), Fraction(52, 7)])

    def test_sequences_increase(self):
        """Test every rule gives a strictly increasing sequence."""
        for rule in MRule:
            with self.subTest(rule=rule):
                values = MSequence(rule, Fraction(3, 4), ODD_EVEN).values(12)
                self.assertTrue(all(a < b for a, b in zip(values, values[1:])))

    def test_index_and_rule_validation(self):
        """Test ν = 0 and unknown rule names."""
        with self.assertRaises(ConfigError):
            m_value(MRule.GENERAL, ODD_ODD, Fraction(1, 2), 0)
        with self.assertRaises(ConfigError):
            MRule.from_string('hexagonal')


class BasisTestCase(SimpleTestCase):
    """Tests for ψ_ν and Ψ^[N]."""

    def setUp(self):
        self.ctx = PrecisionContext(40)
        sequence = MSequence(MRule.LSHAPE, Fraction(3, 4), ODD_EVEN)
        self.spec = ExpansionSpec(sequence, 4, 3, 0, self.ctx)

    def test_matches_mpmath(self):
        """Test ψ_1 = J_{2/3}(k r) sin(2θ/3) against mpmath."""
        r, theta = mpmath.mpf('0.7'), mpmath.mpf('1.1')
        value = basis_eval(self.spec, 1, r, theta)
        with mpmath.workdps(60):
            m = mpmath.mpf(2) / 3
            reference = mpmath.besselj(m, 3 * mpmath.mpf('0.7')) * mpmath.sin(m * mpmath.mpf('1.1'))
            self.assertLess(abs(mpmath.mpf(value) - reference), mpmath.mpf(10) ** -36)

    def test_helmholtz_equation(self):
        """Test Δψ + k²ψ = 0 by second differences."""
        mp = self.ctx.mp
        h = mp.mpf(10) ** -8

        def psi(x, y):
            return basis_eval(self.spec, 2, mp.hypot(x, y), mp.atan2(y, x))

        x, y = mp.mpf('0.6'), mp.mpf('0.4')
        centre = psi(x, y)
        laplacian = (psi(x + h, y) + psi(x - h, y) + psi(x, y + h) + psi(x, y - h) - 4 * centre) / h ** 2
        self.assertLess(abs(laplacian + 9 * centre), mp.mpf(10) ** -12)

    def test_expansion_is_linear(self):
        """Test Ψ with a unit coefficient vector is the single basis function."""
        r, theta = self.ctx.mpf('0.5'), self.ctx.mpf('0.3')
        value = expansion_eval(self.spec, [0, 0, 1, 0], r, theta)
        self.assertEqual(value, basis_eval(self.spec, 3, r, theta))

    def test_dimension_errors(self):
        """Test wrong coefficient count and out-of-range ν."""
        with self.assertRaises(DimensionError):
            expansion_eval(self.spec, [1, 2], 1, 0)
        with self.assertRaises(DimensionError):
            basis_eval(self.spec, 5, 1, 0)

    def test_spec_validation(self):
        """Test N < 1 and k <= 0 are refused."""
        sequence = MSequence(MRule.LSHAPE, Fraction(3, 4), ODD_EVEN)
        with self.assertRaises(ConfigError):
            ExpansionSpec(sequence, 0, 3, 0, self.ctx)
        with self.assertRaises(ConfigError):
            ExpansionSpec(sequence, 4, 0, 0, self.ctx)
