"""
Eigenfunction Tests

Unit tests for null vectors, coefficient patterns, residuals and grid export.
"""
from django.test import SimpleTestCase

from point_matching.core.errors import ConfigError, DimensionError
from point_matching.core.precision import PrecisionContext
from point_matching.core.result import CoefficientVector
from point_matching.engine.assembly import PointMatchMatrix, assemble
from point_matching.engine.catalog import descriptor
from point_matching.engine.eigenfunction import (
    DOMINANT,
    NEGLIGIBLE,
    Eigenfunction,
    boundary_residual,
    coefficient_pattern_report,
    coefficients,
    grid_export,
    helmholtz_residual,
    null_vector,
    solve_coefficients,
)
from point_matching.engine.solver import Bracket, DeterminantFunction, refine_root


class NullVectorTestCase(SimpleTestCase):
    """Tests for null_vector on small exact matrices."""

    def test_rank_two_matrix(self):
        """Test the null vector of a rank-2 3x3 matrix is proportional to (1, -2, 1)."""
        ctx = PrecisionContext(30)
        mp = ctx.mp
        matrix = [[1, 2, 3], [2, 4, 6], [1, 1, 1]]
        vector, pivots, columns = null_vector(matrix, ctx)
        self.assertEqual(len(pivots), 3)
        self.assertEqual(sorted(columns), [0, 1, 2])
        for row in matrix:
            self.assertLess(abs(sum(a * v for a, v in zip(row, vector))), mp.mpf(10) ** -25)
        self.assertLess(abs(vector[1] / vector[0] + 2), mp.mpf(10) ** -25)
        self.assertLess(abs(vector[2] / vector[0] - 1), mp.mpf(10) ** -25)

    def test_largest_pivot_comes_first(self):
        """Test the first pivot is the largest entry and its column is reported."""
        ctx = PrecisionContext(30)
        _, pivots, columns = null_vector([[1, 2, 3], [2, 4, 6], [1, 1, 1]], ctx)
        self.assertEqual(abs(pivots[0]), 6)
        self.assertEqual(columns[0], 2)

    def test_coefficients_fix_largest_pivot_column(self):
        """Test the coefficient of the largest-pivot column is the one set to 1."""
        ctx = PrecisionContext(30)
        mp = ctx.mp
        matrix = PointMatchMatrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]], mp.mpf(1), 3)
        coeffs = coefficients(matrix, ctx)
        self.assertEqual(coeffs.normalization, 2)
        self.assertEqual(coeffs.c[2], 1)
        self.assertLess(abs(coeffs.c[0] - 1), mp.mpf(10) ** -25)
        self.assertLess(abs(coeffs.c[1] + 2), mp.mpf(10) ** -25)


class CoefficientPatternTestCase(SimpleTestCase):
    """Tests for coefficient_pattern_report grouping."""

    def setUp(self):
        self.ctx = PrecisionContext(30)

    def test_groups_by_shared_pattern(self):
        """Test indices dominant in the same modes are grouped and all-negligible ones dropped."""
        vectors = [
            CoefficientVector([1, '1e-20', '0.5', 0], 0, 9),
            CoefficientVector(['1e-25', 1, '1e-22', 0], 1, 15),
        ]
        report = coefficient_pattern_report(vectors, self.ctx, threshold='1e-6')
        self.assertEqual(report.classifications[0], [DOMINANT, NEGLIGIBLE, DOMINANT, NEGLIGIBLE])
        self.assertEqual(report.groups, [
            {'modes': [1], 'indices': [1, 3]},
            {'modes': [2], 'indices': [2]},
        ])

    def test_mismatched_lengths(self):
        """Test vectors of different length are refused."""
        vectors = [CoefficientVector([1, 0], 0, 9), CoefficientVector([1], 0, 15)]
        with self.assertRaises(DimensionError):
            coefficient_pattern_report(vectors, self.ctx)

    def test_empty(self):
        """Test an empty vector list is refused."""
        with self.assertRaises(ConfigError):
            coefficient_pattern_report([], self.ctx)


class LShapeEigenfunctionTestCase(SimpleTestCase):
    """Tests for the lowest L-shape eigenfunction at N = 12."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.ctx = PrecisionContext(40)
        cls.desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', cls.ctx)
        det_fn = DeterminantFunction(cls.desc, 12, cls.ctx)
        mp = cls.ctx.mp
        bracket = Bracket(mp.mpf('9.6'), mp.mpf('9.68'), det_fn('9.6'), det_fn('9.68'))
        root = refine_root(det_fn, bracket, 30, cls.ctx, 12)
        cls.coeffs = solve_coefficients(cls.desc, 12, root.lambda_value, cls.ctx)

    def test_normalized_coefficients(self):
        """Test the coefficient of the largest-pivot column is exactly 1."""
        mp = self.ctx.mp
        self.assertEqual(len(self.coeffs), 12)
        self.assertEqual(self.coeffs.c[self.coeffs.normalization], 1)
        matrix = assemble(self.desc, 12, self.coeffs.lambda_value, self.ctx, normalize_columns=True)
        _, _, columns = null_vector(matrix.entries, self.ctx)
        self.assertEqual(self.coeffs.normalization, columns[0])
        self.assertGreater(abs(self.coeffs.c[0]), mp.mpf(10) ** -10)

    def test_boundary_residual(self):
        """Test the Dirichlet condition holds between the matching points."""
        self.assertLess(boundary_residual(self.desc, self.coeffs, self.ctx), self.ctx.mpf('1e-2'))

    def test_helmholtz_residual(self):
        """Test ΔΨ + λΨ vanishes at an interior point."""
        function = Eigenfunction(self.desc, self.coeffs, self.ctx)
        self.assertLess(helmholtz_residual(function, '0.6', '0.4'), self.ctx.mpf('1e-8'))

    def test_grid_export(self):
        """Test a 16x16 raster leaves points outside Ω blank."""
        grid = grid_export(self.desc, self.coeffs, self.ctx, resolution=16)
        self.assertEqual(len(grid.values), 256)
        blank = [cell for cell in grid.values if cell[2] is None]
        self.assertTrue(0 < len(blank) < 256)
        self.assertTrue(grid.to_text().startswith('x y value\n'))

    def test_grid_resolution_floor(self):
        """Test resolutions below 16 are refused."""
        with self.assertRaises(ConfigError):
            grid_export(self.desc, self.coeffs, self.ctx, resolution=8)
