"""
Services Tests

Unit tests for run configuration, checkpoints, artifacts and text reports.
"""
import json
import tempfile
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase

from point_matching.core.errors import ArtifactError, ConfigError
from point_matching.core.result import ResultRecord
from point_matching.services.artifacts import output_path, write_result, write_text_atomic
from point_matching.services.checkpoint import CheckpointStore
from point_matching.services.reports import fhm_report, sweep_report
from point_matching.services.run_config import RunConfig, load_config_file, parse_config_text


class ConfigFileTestCase(SimpleTestCase):
    """Tests for the flat key = value config format."""

    def test_parse_values(self):
        """Test comments, dashes and typed values."""
        values = parse_config_text(
            "# L-shape run\n"
            "shape = lshape\n"
            "nmax = 40   # upper N\n"
            "lambda-max = 12.5\n"
            "resume = yes\n"
        )
        self.assertEqual(values, {'shape': 'lshape', 'nmax': 40, 'lambda_max': '12.5', 'resume': True})

    def test_unknown_key(self):
        """Test an unknown key names the line."""
        with self.assertRaisesMessage(ConfigError, "<config>:2: unknown key 'colour'"):
            parse_config_text("shape = star\ncolour = blue\n")

    def test_malformed_values(self):
        """Test lines without '=' and badly typed values."""
        with self.assertRaises(ConfigError):
            parse_config_text("shape lshape\n")
        with self.assertRaises(ConfigError):
            parse_config_text("nmax = many\n")
        with self.assertRaises(ConfigError):
            parse_config_text("eps = tiny\n")
        with self.assertRaises(ConfigError):
            parse_config_text("refine = perhaps\n")

    def test_missing_file(self):
        """Test a missing config file is an artifact error."""
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ArtifactError):
                load_config_file(Path(tmp) / 'absent.cfg')


class RunConfigTestCase(SimpleTestCase):
    """Tests for layering and validating run settings."""

    def test_layers(self):
        """Test flags override the file, which overrides settings; None flags are ignored."""
        config = RunConfig.resolve(
            defaults={'digits': 40, 'threads': 2, 'checkpoint_dir': None},
            file_values={'digits': 50, 'shape': 'star', 'class': 'S'},
            flags={'digits': None, 'shape': 'cutsquare', 'index': '3'},
        )
        self.assertEqual(config.digits, 50)
        self.assertEqual(config.threads, 2)
        self.assertEqual(config.shape, 'cutsquare')
        self.assertEqual(config.class_id, 'S')
        self.assertEqual(config.index, 3)
        self.assertEqual(config.bc, 'dirichlet')

    def test_validation(self):
        """Test inconsistent settings are refused."""
        bad = [
            {'threads': 0},
            {'index': 0},
            {'nmin': 20, 'nmax': 10},
            {'dn': 0},
            {'scale': 'huge'},
            {'gamma_algorithm': 'lanczos'},
            {'lambda_min': '10', 'lambda_max': '5'},
        ]
        for flags in bad:
            with self.subTest(flags=flags):
                with self.assertRaises(ConfigError):
                    RunConfig.resolve(flags=flags)

    def test_precision_for(self):
        """Test the working digits follow the larger of --digits and the N rule."""
        config = RunConfig.resolve(flags={'digits': 20})
        self.assertEqual(config.precision_for(30, Fraction(6, 5)).working_digits, 36)
        self.assertEqual(config.precision_for(10, Fraction(6, 5)).working_digits, 20)
        config = RunConfig.resolve(flags={'digits': 20, 'mult': '2'})
        self.assertEqual(config.precision_for(30, Fraction(6, 5)).working_digits, 60)


class CheckpointTestCase(SimpleTestCase):
    """Tests for the append-only checkpoint store."""

    def test_resume(self):
        """Test records survive a restart of the same run."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'run.ckpt'
            store = CheckpointStore(path, 'lshape N=10..40/2', resume=True)
            store.append(10, '9.6397', 14, 30)
            store.append(12, '9.63972', 12, 30)
            resumed = CheckpointStore(path, 'lshape N=10..40/2', resume=True)
            self.assertEqual([r.N for r in resumed.records()], [10, 12])
            self.assertEqual(resumed.records()[1].lambda_value, '9.63972')

    def test_fresh_run_truncates(self):
        """Test a run without resume starts an empty file."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'run.ckpt'
            CheckpointStore(path, 'a').append(10, '1.5', 3, 20)
            self.assertEqual(CheckpointStore(path, 'a').records(), [])

    def test_different_run(self):
        """Test a checkpoint is not replayed into another run."""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'run.ckpt'
            CheckpointStore(path, 'star S').append(10, '38.1', 5, 20)
            with self.assertRaises(ConfigError):
                CheckpointStore(path, 'star A', resume=True)


class ArtifactTestCase(SimpleTestCase):
    """Tests for atomic writes and result records."""

    def test_atomic_write(self):
        """Test the file appears complete and no temp file is left behind."""
        with tempfile.TemporaryDirectory() as tmp:
            target = write_text_atomic(Path(tmp) / 'nested' / 'out.txt', 'hello\n')
            self.assertEqual(target.read_text(encoding='utf-8'), 'hello\n')
            self.assertEqual(sorted(p.name for p in target.parent.iterdir()), ['out.txt'])

    def test_unwritable_target(self):
        """Test writing over a directory raises ArtifactError."""
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(ArtifactError):
                write_text_atomic(tmp, 'text')

    def test_output_path(self):
        """Test --out wins over the output directory."""
        self.assertEqual(output_path('r.json', out='x/y.json', output_dir='runs'), Path('x/y.json'))
        self.assertEqual(output_path('r.json', output_dir='runs'), Path('runs') / 'r.json')
        self.assertEqual(output_path('r.json'), Path('.') / 'r.json')

    def test_result_record_json(self):
        """Test the JSON record carries every field."""
        record = ResultRecord(
            shape='lshape', class_id='lowest_dirichlet_sym', boundary_kind='dirichlet', index=1,
            lambda_lo='9.63972384', lambda_hi='9.63972385', bound_string='9.6397238_{4}^{5}',
            epsilon='1e-8', digits_D='8.0', rho='0.5', N_down=12, N_up=14,
            working_precision=30, wall_seconds=1.25,
        )
        with tempfile.TemporaryDirectory() as tmp:
            path = write_result(Path(tmp) / 'r.json', record)
            data = json.loads(path.read_text(encoding='utf-8'))
        self.assertEqual(tuple(data), ResultRecord.FIELDS)
        self.assertEqual(data['class'], 'lowest_dirichlet_sym')
        self.assertEqual(data['N_up'], 14)


class ReportTestCase(SimpleTestCase):
    """Tests for the Jinja2 text reports."""

    def test_sweep_report(self):
        """Test one numbered line per bracket with the refined value when present."""
        text = sweep_report('star/S/dirichlet', 20, [
            {'lower': '38.0', 'upper': '38.3', 'refined': '38.1'},
            {'lower': '60.1', 'upper': '60.4', 'refined': None},
        ])
        self.assertIn('N=20', text)
        self.assertIn('  1  [38.0, 38.3]  λ=38.1', text)
        self.assertIn('  2  [60.1, 60.4]\n', text)
        self.assertTrue(text.rstrip().endswith('2 bracket(s)'))

    def test_fhm_report(self):
        """Test the pass count and the optional bound line."""
        rows = [
            {'N': 4, 'lambda': '9.6', 'status': 'pass', 'published': '9.6', 'agreement': 2},
            {'N': 6, 'lambda': '9.64', 'status': 'FAIL', 'published': None, 'agreement': None},
        ]
        text = fhm_report(rows, 'fhm')
        self.assertIn('(fhm points)', text)
        self.assertIn('1/2 rows match the reference values', text)
        self.assertNotIn('bound', text)
        self.assertIn('bound 9.64_{1}^{2}', fhm_report(rows, 'fhm', '9.64_{1}^{2}'))
