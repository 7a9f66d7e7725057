"""
Geometry Tests

Unit tests for canonical placement, containment and the matching-point
distributions.
"""
import mpmath
from django.test import SimpleTestCase

from point_matching.core.errors import ConfigError, GeometryError
from point_matching.core.precision import PrecisionContext
from point_matching.engine.geometry import (
    MatchingSet,
    MatchPoint,
    canonical_chebyshev,
    canonicalize,
    cutsquare_nodes,
    edge_line,
    equal_spaced_nodes,
    half_sine_nodes,
    quarter_sine_nodes,
    star_nodes,
    validate_matching_set,
    wavelength_gap_check,
)

LSHAPE_HALF = [(0, 0), (1, 0), (1, 1), (-1, 1)]


def as_floats(polygon):
    return [(float(v.x), float(v.y)) for v in polygon.vertices]


class CanonicalizeTestCase(SimpleTestCase):
    """Tests for moving polygons into canonical position."""

    def setUp(self):
        self.ctx = PrecisionContext(30)

    def test_lshape_half_is_already_canonical(self):
        """Test the L-shape half keeps its vertices and gets Δφ = 3π/4."""
        polygon = canonicalize(LSHAPE_HALF, self.ctx)
        self.assertEqual(as_floats(polygon), [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (-1.0, 1.0)])
        self.assertAlmostEqual(float(polygon.delta_phi), 3 * float(mpmath.pi) / 4, places=14)
        self.assertAlmostEqual(float(polygon.area), 1.5, places=14)

    def test_clockwise_input_is_mirrored(self):
        """Test a clockwise polygon comes out counter-clockwise."""
        polygon = canonicalize([(0, 0), (1, 0), (1, -1), (-1, -1)], self.ctx)
        self.assertEqual(as_floats(polygon), [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (-1.0, 1.0)])
        self.assertGreater(polygon.signed_area(), 0)

    def test_rotated_input_puts_edge_two_vertical(self):
        """Test ∂Ω2 ends up on a vertical line at positive x."""
        polygon = canonicalize([(0, 0), (0, 2), (-1, 2)], self.ctx)
        v2, v3 = polygon.vertices[1], polygon.vertices[2]
        self.assertEqual(v2.x, v3.x)
        self.assertAlmostEqual(float(v2.x), 2.0, places=20)
        self.assertAlmostEqual(float(polygon.delta_phi), float(mpmath.atan2(1, 2)), places=14)

    def test_degenerate_polygons(self):
        """Test too few vertices, zero area and zero-length edges."""
        with self.assertRaises(GeometryError):
            canonicalize([(0, 0), (1, 0)], self.ctx)
        with self.assertRaises(GeometryError):
            canonicalize([(0, 0), (1, 0), (2, 0)], self.ctx)
        with self.assertRaises(GeometryError):
            canonicalize([(0, 0), (1, 0), (1, 0), (0, 1)], self.ctx)

    def test_contains(self):
        """Test interior, exterior and boundary points."""
        polygon = canonicalize(LSHAPE_HALF, self.ctx)
        self.assertTrue(polygon.contains(self.ctx.mpf('0.5'), self.ctx.mpf('0.5')))
        self.assertTrue(polygon.contains(self.ctx.mpf('-0.5'), self.ctx.mpf('0.9')))
        self.assertTrue(polygon.contains(self.ctx.mpf(1), self.ctx.mpf('0.3')))
        self.assertFalse(polygon.contains(self.ctx.mpf('-0.5'), self.ctx.mpf('0.2')))
        self.assertFalse(polygon.contains(self.ctx.mpf('0.5'), self.ctx.mpf('-0.5')))

    def test_edge_line_normal_points_outward(self):
        """Test the normal of ∂Ω2 is +x and of ∂Ω3 is +y."""
        polygon = canonicalize(LSHAPE_HALF, self.ctx)
        right, top = edge_line(polygon, 2), edge_line(polygon, 3)
        self.assertEqual((float(right.A), float(right.B), float(right.C)), (1.0, 0.0, 1.0))
        self.assertEqual((float(top.A), float(top.B), float(top.C)), (0.0, 1.0, 1.0))


class DistributionTestCase(SimpleTestCase):
    """Tests for the node formulas."""

    def setUp(self):
        self.ctx = PrecisionContext(30)

    def test_canonical_chebyshev_is_symmetric(self):
        """Test s_μ + s_{n+1-μ} = ℓ and every node lies inside (0, ℓ)."""
        nodes = canonical_chebyshev(2, 5, self.ctx)
        for a, b in zip(nodes, reversed(nodes)):
            self.assertLess(abs(a + b - 2), mpmath.mpf(10) ** -25)
        self.assertTrue(all(0 < s < 2 for s in nodes))

    def test_quarter_sine_is_increasing(self):
        """Test the polygon nodes increase and stay below y_max."""
        nodes = quarter_sine_nodes(1, 8, self.ctx)
        self.assertTrue(all(a < b for a, b in zip(nodes, nodes[1:])))
        self.assertLess(nodes[-1], 1)

    def test_half_sine_folds_back(self):
        """Test the literal half-sine formula repeats its end values."""
        nodes = half_sine_nodes(1, 6, self.ctx)
        self.assertLess(abs(nodes[0] - nodes[-1]), mpmath.mpf(10) ** -25)

    def test_star_nodes_stay_between_ends(self):
        """Test star nodes lie strictly between y_B and y_C."""
        nodes = star_nodes('0.2', '0.9', 6, self.ctx)
        self.assertTrue(all(self.ctx.mpf('0.2') < y < self.ctx.mpf('0.9') for y in nodes))
        with self.assertRaises(ConfigError):
            star_nodes(1, 1, 4, self.ctx)

    def test_cutsquare_nodes(self):
        """Test half the nodes lie on x = 1/2 and half on y = 1/2."""
        nodes = cutsquare_nodes(8, self.ctx)
        half = self.ctx.mpf(1) / 2
        self.assertEqual(sum(1 for v in nodes[:4] if v.x == half), 4)
        self.assertEqual(sum(1 for v in nodes[4:] if v.y == half), 4)
        with self.assertRaises(ConfigError):
            cutsquare_nodes(7, self.ctx)

    def test_equal_spaced(self):
        """Test closed and open uniform spacing."""
        self.assertEqual([float(s) for s in equal_spaced_nodes(3, 4, True, self.ctx)], [0.0, 1.0, 2.0, 3.0])
        self.assertEqual([float(s) for s in equal_spaced_nodes(3, 2, False, self.ctx)], [1.0, 2.0])


class MatchingSetTestCase(SimpleTestCase):
    """Tests for matching-set validation and the wavelength check."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.polygon = canonicalize(LSHAPE_HALF, self.ctx)

    def test_duplicate_points_rejected(self):
        """Test two equal points on one edge."""
        point = MatchPoint(self.ctx.mpf(1), self.ctx.mpf('0.5'), 2)
        with self.assertRaises(GeometryError):
            validate_matching_set(self.polygon, MatchingSet([point, point], [2], 'custom'))

    def test_point_off_edge_rejected(self):
        """Test a point that is not on its edge line."""
        point = MatchPoint(self.ctx.mpf('0.9'), self.ctx.mpf('0.5'), 2)
        with self.assertRaises(GeometryError):
            validate_matching_set(self.polygon, MatchingSet([point], [1], 'custom'))

    def test_wavelength_gap_check(self):
        """Test gaps of 0.1 pass at λ = 1 and fail with a warning at λ = 10⁴."""
        points = [MatchPoint(self.ctx.mpf(1), self.ctx.mpf(i) / 10, 2) for i in range(1, 10)]
        self.assertTrue(wavelength_gap_check(points, 1, self.ctx))
        with self.assertLogs('point_matching.engine.geometry', level='WARNING'):
            self.assertFalse(wavelength_gap_check(points, 10000, self.ctx))
