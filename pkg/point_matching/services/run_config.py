"""
Run Configuration

Resolves one run's settings from three layers, lowest first: defaults
from Django settings, a flat ``key = value`` config file, and command
flags. The engine only ever sees the resolved plain values.
"""
import logging
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from point_matching.core.errors import ArtifactError, ConfigError
from point_matching.core.precision import PrecisionContext
from point_matching.engine.catalog import SCALES
from point_matching.engine.solver import working_precision

logger = logging.getLogger(__name__)

INT_KEYS = {'index', 'digits', 'nmin', 'nmax', 'dn', 'threads', 'sides', 'grid', 'pattern',
            'guard_digits', 'term_cap_factor'}
BOOL_KEYS = {'resume', 'refine', 'unfold'}
# Decimal strings kept verbatim so they can be read at any precision
DECIMAL_KEYS = {'eps', 'mult', 'lambda_min', 'lambda_max'}
STRING_KEYS = {'shape', 'class', 'bc', 'points', 'out', 'scale', 'dump_matrix',
               'gamma_algorithm', 'checkpoint_dir', 'output_dir'}
KNOWN_KEYS = INT_KEYS | BOOL_KEYS | DECIMAL_KEYS | STRING_KEYS

TRUE_WORDS = {'1', 'true', 'yes', 'on'}
FALSE_WORDS = {'0', 'false', 'no', 'off'}


def _convert(key: str, value: Any) -> Any:
    if value is None:
        return None
    if key in INT_KEYS:
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"'{key}' must be an integer, got {value!r}")
    if key in BOOL_KEYS:
        if isinstance(value, bool):
            return value
        word = str(value).strip().lower()
        if word in TRUE_WORDS:
            return True
        if word in FALSE_WORDS:
            return False
        raise ConfigError(f"'{key}' must be a boolean, got {value!r}")
    if key in DECIMAL_KEYS:
        text = str(value).strip()
        try:
            Fraction(text)
        except ValueError:
            raise ConfigError(f"'{key}' must be a decimal number, got {value!r}")
        return text
    return str(value).strip()


def parse_config_text(text: str, source: str = '<config>') -> Dict[str, Any]:
    """
    Parse a flat config file.

    One ``key = value`` per line; ``#`` starts a comment; keys are the long
    flag names with dashes written as underscores.

    Raises:
        ConfigError: Malformed line or unknown key
    """
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"{source}:{number}: expected 'key = value'")
        key, value = (part.strip() for part in line.split('=', 1))
        key = key.replace('-', '_')
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{source}:{number}: unknown key '{key}'")
        values[key] = _convert(key, value)
    return values


def load_config_file(path) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ArtifactError(f"Cannot read config file {path}: {e}")
    return parse_config_text(text, str(path))


@dataclass
class RunConfig:
    """Fully resolved settings of one command run."""
    shape: Optional[str] = None
    class_id: Optional[str] = None
    bc: str = 'dirichlet'
    index: int = 1
    digits: int = 30
    eps: Optional[str] = None
    nmin: Optional[int] = None
    nmax: Optional[int] = None
    dn: Optional[int] = None
    mult: Optional[str] = None
    points: Optional[str] = None
    threads: int = 1
    out: Optional[str] = None
    resume: bool = False
    lambda_min: Optional[str] = None
    lambda_max: Optional[str] = None
    sides: Optional[int] = None
    grid: int = 64
    pattern: Optional[int] = None
    scale: Optional[str] = None
    refine: bool = False
    unfold: bool = False
    dump_matrix: Optional[str] = None
    guard_digits: int = 10
    term_cap_factor: int = 100
    gamma_algorithm: str = 'library'
    checkpoint_dir: Optional[str] = None
    output_dir: Optional[str] = None

    @classmethod
    def resolve(
        cls,
        defaults: Optional[Dict[str, Any]] = None,
        file_values: Optional[Dict[str, Any]] = None,
        flags: Optional[Dict[str, Any]] = None,
    ) -> 'RunConfig':
        """
        Merge the layers; a flag set to None leaves the lower layer in place.

        Args:
            defaults: Values from Django settings
            file_values: Parsed config file
            flags: Command options
        """
        merged: Dict[str, Any] = {}
        for layer in (defaults or {}, file_values or {}, flags or {}):
            for key, value in layer.items():
                key = key.replace('-', '_')
                if key not in KNOWN_KEYS:
                    continue
                if value is not None:
                    merged[key] = _convert(key, value)
        if 'class' in merged:
            merged['class_id'] = merged.pop('class')
        names = {f.name for f in fields(cls)}
        config = cls(**{k: v for k, v in merged.items() if k in names})
        config.validate()
        return config

    def validate(self) -> None:
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.index < 1:
            raise ConfigError("index must be >= 1")
        if self.nmin is not None and self.nmax is not None and self.nmax < self.nmin:
            raise ConfigError(f"nmax={self.nmax} is below nmin={self.nmin}")
        if self.dn is not None and self.dn < 1:
            raise ConfigError("dn must be >= 1")
        if self.scale is not None and self.scale not in SCALES:
            raise ConfigError(f"Unknown scale: {self.scale} (choose from {', '.join(SCALES)})")
        if self.gamma_algorithm not in ('library', 'spouge'):
            raise ConfigError(f"Unknown gamma algorithm: {self.gamma_algorithm}")
        if self.lambda_min is not None and self.lambda_max is not None:
            if Fraction(self.lambda_max) <= Fraction(self.lambda_min):
                raise ConfigError("lambda_max must exceed lambda_min")

    def multiplier(self, default: Fraction) -> Fraction:
        return Fraction(self.mult) if self.mult is not None else default

    def precision_for(self, N_max: int, default_multiplier: Fraction) -> PrecisionContext:
        """Working digits: the larger of --digits and the rule of thumb at N_max."""
        digits = max(self.digits, working_precision(N_max, self.multiplier(default_multiplier)))
        logger.debug(f"Working precision {digits} digits for N_max={N_max}")
        return PrecisionContext(
            digits,
            guard_digits=self.guard_digits,
            term_cap_factor=self.term_cap_factor,
            gamma_algorithm=self.gamma_algorithm,
        )

    def base_context(self) -> PrecisionContext:
        return PrecisionContext(
            self.digits,
            guard_digits=self.guard_digits,
            term_cap_factor=self.term_cap_factor,
            gamma_algorithm=self.gamma_algorithm,
        )
