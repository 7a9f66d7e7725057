"""
Assembly Tests

Unit tests for the point-matching matrix, its rows and determinant.
"""
import mpmath
from django.test import SimpleTestCase

from point_matching.core.errors import ConfigError, DimensionError
from point_matching.core.precision import PrecisionContext
from point_matching.engine.assembly import PointMatchMatrix, assemble, column_normalizers
from point_matching.engine.catalog import descriptor
from point_matching.engine.expansion import ExpansionSpec
from point_matching.engine.rows import RowKind
from point_matching.engine.solver import det_sign


class AssemblyTestCase(SimpleTestCase):
    """Tests for small L-shape assemblies."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx)

    def test_square_matrix_of_value_rows(self):
        """Test N = 6 gives a 6x6 matrix of odd-value rows."""
        matrix = assemble(self.desc, 6, '9.6', self.ctx)
        self.assertEqual(len(matrix.entries), 6)
        self.assertTrue(all(len(row) == 6 for row in matrix.entries))
        self.assertTrue(all(entry.kind == RowKind.ODD_VALUE for entry in matrix.row_plan))

    def test_threads_do_not_change_rows(self):
        """Test concurrent row construction keeps the row order."""
        serial = assemble(self.desc, 6, '9.6', self.ctx)
        threaded = assemble(self.desc, 6, '9.6', self.ctx, threads=3)
        self.assertEqual(serial.entries, threaded.entries)

    def test_column_scaling_shifts_log_determinant(self):
        """Test column normalization keeps the sign and shifts log10|det| by the scales."""
        raw = assemble(self.desc, 6, '9.6', self.ctx)
        scaled = assemble(self.desc, 6, '9.6', self.ctx, normalize_columns=True)
        mp = self.ctx.mp
        raw_det, scaled_det = det_sign(raw, mp), det_sign(scaled, mp)
        self.assertEqual(raw_det.sign, scaled_det.sign)
        shift = sum(mp.log10(s) for s in scaled.column_scale)
        self.assertLess(abs(raw_det.log10_magnitude - scaled_det.log10_magnitude - shift), mp.mpf(10) ** -20)

    def test_column_normalizers_are_positive(self):
        """Test (k/2)^m / Γ(m+1) > 0 for every column."""
        spec = ExpansionSpec(self.desc.m_sequence(), 6, 3, 0, self.ctx)
        self.assertTrue(all(s > 0 for s in column_normalizers(spec)))

    def test_invalid_lambda(self):
        """Test λ <= 0 is refused."""
        with self.assertRaises(ConfigError):
            assemble(self.desc, 6, 0, self.ctx)

    def test_matrix_dump_headers(self):
        """Test the text dump lists one header per row."""
        matrix = assemble(self.desc, 6, '9.6', self.ctx)
        text = matrix.to_text(self.ctx.mp, digits=12)
        self.assertTrue(text.startswith('# N=6 lambda=9.6'))
        self.assertEqual(text.count('# row '), 6)
        self.assertIn('odd_value edge=2', text)

    def test_non_square_matrix_rejected(self):
        """Test PointMatchMatrix checks its shape."""
        with self.assertRaises(DimensionError):
            PointMatchMatrix([[1, 2]], 1, 2)


class DeterminantTestCase(SimpleTestCase):
    """Tests for det_sign against cofactor expansion."""

    def test_cofactor_oracle(self):
        """Test a 3x3 integer matrix whose determinant is 24."""
        with mpmath.workdps(30):
            value = det_sign([[2, -1, 0], [1, 3, 2], [0, 1, 4]], mpmath.mp)
            self.assertEqual(value.sign, 1)
            self.assertLess(abs(value.log10_magnitude - mpmath.log10(24)), mpmath.mpf(10) ** -25)

    def test_negative_determinant(self):
        """Test a row swap gives sign -1."""
        self.assertEqual(det_sign([[0, 1], [1, 0]]).sign, -1)

    def test_singular_matrix(self):
        """Test an exact zero pivot gives sign 0."""
        value = det_sign([[1, 2], [2, 4]])
        self.assertEqual(value.sign, 0)

    def test_non_square(self):
        """Test det_sign refuses a ragged matrix."""
        with self.assertRaises(ConfigError):
            det_sign([[1, 2], [3]])
