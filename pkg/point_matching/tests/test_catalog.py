"""
Catalog Tests

Unit tests for the shapes catalog: listings, descriptors and the row
plans they produce.
"""
import math

import mpmath
from django.test import SimpleTestCase

from point_matching.constants import LSHAPE_FHM_VALUES
from point_matching.core.errors import ConfigError, NotInCatalogError
from point_matching.core.precision import PrecisionContext
from point_matching.engine.catalog import (
    BoundaryKind,
    RegularPolygon,
    degenerate_letter,
    descriptor,
    fhm_positions,
    gamma_of,
    list_catalog,
    shape_for,
)
from point_matching.engine.driver import track_root
from point_matching.engine.geometry import Vertex
from point_matching.engine.rows import RowKind
from point_matching.engine.solver import DeterminantFunction, refine_root


def smallest_N(desc, at_least=6):
    start = max(desc.N_min, at_least)
    return math.ceil(start / desc.N_multiple) * desc.N_multiple


class CatalogListingTestCase(SimpleTestCase):
    """Tests for the catalog listing."""

    def test_listing_is_unique_and_contains_lshape(self):
        """Test entries are distinct and include the L-shape tower."""
        entries = list_catalog()
        self.assertEqual(len(entries), len(set(entries)))
        self.assertIn(('lshape', 'lowest_dirichlet_sym', 'dirichlet'), entries)
        self.assertIn(('cutsquare', 'full', 'neumann'), entries)
        self.assertIn(('polygon6', 'C_o', 'dirichlet'), entries)

    def test_every_entry_builds_a_full_row_plan(self):
        """Test each cataloged class yields N rows at a small admissible N."""
        ctx = PrecisionContext(30)
        for shape, class_id, bc in list_catalog():
            with self.subTest(shape=shape, class_id=class_id, bc=bc):
                desc = descriptor(shape, class_id, bc, ctx)
                N = smallest_N(desc)
                self.assertEqual(len(desc.row_plan(N)), N)

    def test_unknown_entries(self):
        """Test unknown shapes, classes and too-small polygons."""
        ctx = PrecisionContext(30)
        with self.assertRaises(NotInCatalogError):
            shape_for('triangle')
        with self.assertRaises(NotInCatalogError):
            shape_for('polygon4')
        with self.assertRaises(NotInCatalogError):
            descriptor('lshape', 'lowest_dirichlet_sym', 'neumann', ctx)
        with self.assertRaises(NotInCatalogError):
            descriptor('cutsquare', 'D', 'dirichlet', ctx)

    def test_polygon_name_forms(self):
        """Test the accepted spellings of polygon names."""
        for name in ('polygon7', 'polygon(7)', 'regular_polygon7'):
            with self.subTest(name=name):
                self.assertEqual(shape_for(name).sigma, 7)


class BoundaryKindTestCase(SimpleTestCase):
    """Tests for boundary kind parsing."""

    def test_from_string(self):
        """Test full names and single letters."""
        self.assertEqual(BoundaryKind.from_string('Neumann'), BoundaryKind.NEUMANN)
        self.assertEqual(BoundaryKind.from_string('d'), BoundaryKind.DIRICHLET)
        with self.assertRaises(ConfigError):
            BoundaryKind.from_string('robin')


class RegularPolygonTestCase(SimpleTestCase):
    """Tests for the regular polygon classes."""

    def setUp(self):
        self.ctx = PrecisionContext(30)

    def test_class_labels(self):
        """Test the hexagon and pentagon class lists."""
        self.assertEqual(
            RegularPolygon(6).class_labels(),
            ['S', 'A', "S'", "A'", 'B_e', 'B_o', 'C_e', 'C_o'],
        )
        self.assertEqual(RegularPolygon(5).class_labels(), ['S', 'A', 'B_e', 'B_o', 'C_e', 'C_o'])

    def test_degenerate_letters(self):
        """Test γ to letter and back."""
        self.assertEqual(degenerate_letter(1), 'B')
        self.assertEqual(gamma_of('C'), 2)
        self.assertEqual(gamma_of(degenerate_letter(30)), 30)
        with self.assertRaises(NotInCatalogError):
            gamma_of('A')

    def test_area_pi_scale(self):
        """Test the fundamental triangle is 1/(2σ) of an area-π polygon."""
        desc = descriptor('polygon7', 'S', 'dirichlet', self.ctx, scale='area_pi')
        self.assertLess(abs(desc.region.area * 14 - self.ctx.mp.pi), mpmath.mpf(10) ** -25)

    def test_unit_edge_scale(self):
        """Test the unit-edge polygon has area σ/(4 tan(π/σ))."""
        mp = self.ctx.mp
        desc = descriptor('polygon5', 'A', 'dirichlet', self.ctx)
        expected = mp.mpf(5) / (4 * mp.tan(mp.pi / 5))
        self.assertLess(abs(desc.region.area * 10 - expected), mpmath.mpf(10) ** -25)

    def test_odd_member_names_its_partner(self):
        """Test B_o is solved through B_e's kite."""
        odd = descriptor('polygon6', 'B_o', 'dirichlet', self.ctx)
        self.assertEqual(odd.partner_of, 'B_e')
        self.assertEqual(odd.q_parity, 'odd')
        self.assertEqual(odd.alias, 'C1')

    def test_periodic_rows_come_first(self):
        """Test a kite plan lists N/2 periodic rows, then N/2 even rows."""
        desc = descriptor('polygon8', 'C_e', 'neumann', self.ctx)
        plan = desc.row_plan(8)
        self.assertEqual([entry.kind for entry in plan[:4]], [RowKind.PERIODIC_PAIR] * 4)
        self.assertEqual([entry.kind for entry in plan[4:]], [RowKind.EVEN_NORMAL_DERIVATIVE] * 4)
        self.assertTrue(all(entry.gamma == 2 and entry.sigma == 8 for entry in plan[:4]))


class LShapeDescriptorTestCase(SimpleTestCase):
    """Tests for the L-shape descriptor and its distributions."""

    def setUp(self):
        self.ctx = PrecisionContext(30)

    def test_canonical_points_split_by_length(self):
        """Test N = 6 puts 2 points on ∂Ω2 and 4 on ∂Ω3."""
        desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx)
        matching, vertex_rows = desc.matching(6)
        self.assertEqual(matching.per_edge_counts, [2, 4])
        self.assertEqual(vertex_rows, [])

    def test_fhm_plan_ends_with_vertex_rows(self):
        """Test the fhm distribution adds θ-derivative rows at V2 and V3."""
        desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx, distribution='fhm')
        plan = desc.row_plan(8)
        self.assertEqual([entry.kind for entry in plan[-2:]], [RowKind.VERTEX_THETA_DERIVATIVE] * 2)
        self.assertEqual(sum(1 for entry in plan if entry.kind == RowKind.ODD_VALUE), 6)

    def test_N_rules(self):
        """Test N must respect the distribution's multiple."""
        desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx)
        with self.assertRaises(ConfigError):
            desc.check_N(7)
        with self.assertRaises(ConfigError):
            descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx, distribution='half_sine')

    def test_cutsquare_classes_keep_their_distribution(self):
        """Test cut-square A/B/C refuse other distributions."""
        with self.assertRaises(ConfigError):
            descriptor('cutsquare', 'A', 'dirichlet', self.ctx, distribution='canonical_chebyshev')


class FhmLayoutTestCase(SimpleTestCase):
    """Tests for the small-N L-shape layouts against the reference table."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx, distribution='fhm')

    def lowest_root(self, desc, N):
        mp = self.ctx.mp
        det_fn = DeterminantFunction(desc, N, self.ctx)
        bracket = track_root(det_fn, mp.mpf('9.64'), mp.mpf('0.05'), mp)
        return self.ctx.mpf(refine_root(det_fn, bracket, 20, self.ctx, N).lambda_value)

    def assertMatchesTable(self, value, N):
        reference = LSHAPE_FHM_VALUES[N]
        decimals = len(reference.split('.')[1])
        error = abs(value - self.ctx.mp.mpf(reference))
        self.assertLessEqual(error, self.ctx.mp.mpf(10) ** -decimals, f'N={N}: {value} vs {reference}')

    def test_value_points_on_uniform_grid(self):
        """Test the N-2 value points sit at s = 2j/(N-2) from V2, ending at the middle of V3V4."""
        mp = self.ctx.mp
        for N in range(4, 22, 2):
            with self.subTest(N=N):
                positions = fhm_positions(self.desc, N)
                self.assertEqual(len(positions), N - 2)
                for j, s in enumerate(positions, start=1):
                    self.assertLess(abs(s - mp.mpf(2) * j / (N - 2)), self.ctx.epsilon * 10)
                matching, _ = self.desc.matching(N)
                last = matching.points[-1]
                self.assertLess(abs(last.x), self.ctx.epsilon * 10)
                self.assertLess(abs(last.y - 1), self.ctx.epsilon * 10)

    def test_value_points_avoid_v2_and_v4(self):
        """Test no value point lands on V2 or V4 while exactly one lands on V3."""
        region = self.desc.region
        v2, v3, v4 = region.vertices[1], region.vertices[2], region.vertices[3]
        tol = self.ctx.epsilon * 100

        def at(point, vertex):
            return abs(point.x - vertex.x) < tol and abs(point.y - vertex.y) < tol

        for N in range(4, 22, 2):
            with self.subTest(N=N):
                points = [(entry.x, entry.y) for entry in self.desc.row_plan(N)
                          if entry.kind == RowKind.ODD_VALUE]
                points = [Vertex(x, y) for x, y in points]
                self.assertFalse(any(at(p, v2) or at(p, v4) for p in points))
                self.assertEqual(sum(1 for p in points if at(p, v3)), 1)

    def test_far_edge_layout_stays_on_v3v4(self):
        """Test the far-edge layout starts at V3 and stays short of V4."""
        mp = self.ctx.mp
        positions = fhm_positions(self.desc, 8, far_edge=True)
        self.assertEqual(positions[0], 1)
        self.assertLess(abs(positions[-1] - (3 - mp.mpf(1) / 3)), self.ctx.epsilon * 10)

    def test_odd_N_rejected(self):
        """Test the layouts refuse odd or too small N."""
        with self.assertRaises(ConfigError):
            fhm_positions(self.desc, 7)
        with self.assertRaises(ConfigError):
            fhm_positions(self.desc, 2)

    def test_small_N_roots_match_table(self):
        """Test λ^[N] for N = 4, 6, 8 to every digit of the reference table."""
        for N in (4, 6, 8):
            with self.subTest(N=N):
                self.assertMatchesTable(self.lowest_root(self.desc, N), N)

    def test_far_edge_layout_gives_the_same_roots(self):
        """Test the far-edge layout reproduces the N = 6 row as well."""
        desc = descriptor('lshape', 'lowest_dirichlet_sym', 'dirichlet', self.ctx, distribution='fhm_far_edge')
        self.assertMatchesTable(self.lowest_root(desc, 6), 6)
