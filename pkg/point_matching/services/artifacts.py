"""
Artifact Writer

Result records, grids, matrices and polygons are written to a temporary
file beside the target and renamed into place, so readers never see a
partial file.
"""
import logging
import os
import tempfile
from pathlib import Path

from point_matching.core.errors import ArtifactError
from point_matching.core.result import GridExport, ResultRecord

logger = logging.getLogger(__name__)


def write_text_atomic(path, text: str) -> Path:
    """Write ``text`` to ``path`` via temp file + rename."""
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(prefix=f'.{target.name}.', dir=target.parent)
        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as handle:
                handle.write(text)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(temp_name, target)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise
    except OSError as e:
        raise ArtifactError(f"Cannot write {target}: {e}")
    logger.debug(f"Wrote {target} ({len(text)} bytes)")
    return target


def write_result(path, record: ResultRecord) -> Path:
    return write_text_atomic(path, record.to_json())


def write_grid(path, grid: GridExport) -> Path:
    return write_text_atomic(path, grid.to_text())


def write_matrix(path, matrix, mp, digits: int = 20) -> Path:
    return write_text_atomic(path, matrix.to_text(mp, digits))


def output_path(name: str, out: str = None, output_dir: str = None) -> Path:
    """--out when given, else ``name`` inside the configured output directory."""
    if out:
        return Path(out)
    return Path(output_dir or '.') / name
