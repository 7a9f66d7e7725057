"""
Checkpoint Store

Append-only text record of a bound run, one line per completed N:

    N lambda det_evaluations precision

A header line names the run so a checkpoint is never replayed into a
different shape, class or schedule.
"""
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import List

from point_matching.core.errors import ArtifactError, ConfigError

logger = logging.getLogger(__name__)

HEADER_PREFIX = '# point_matching checkpoint'


@dataclass(frozen=True)
class CheckpointRecord:
    """One completed step of the schedule."""
    N: int
    lambda_value: str
    det_evaluations: int
    precision: int

    def to_line(self) -> str:
        return f"{self.N} {self.lambda_value} {self.det_evaluations} {self.precision}\n"

    @classmethod
    def from_line(cls, line: str) -> 'CheckpointRecord':
        parts = line.split()
        if len(parts) != 4:
            raise ConfigError(f"Malformed checkpoint record: {line.strip()!r}")
        try:
            return cls(int(parts[0]), parts[1], int(parts[2]), int(parts[3]))
        except ValueError:
            raise ConfigError(f"Malformed checkpoint record: {line.strip()!r}")


class CheckpointStore:
    """
    Checkpoint file for one run.

    Args:
        path: File location
        run_label: Identity written in the header and checked on resume
        resume: Keep existing records; otherwise start a fresh file
    """

    def __init__(self, path, run_label: str, resume: bool = False):
        self.path = Path(path)
        self.run_label = run_label
        self._records: List[CheckpointRecord] = []
        if resume and self.path.exists():
            self._load()
        else:
            self._start()

    @property
    def header(self) -> str:
        return f"{HEADER_PREFIX} {self.run_label}\n"

    def _start(self) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self.path.write_text(self.header, encoding='utf-8')
        except OSError as e:
            raise ArtifactError(f"Cannot create checkpoint {self.path}: {e}")

    def _load(self) -> None:
        try:
            lines = self.path.read_text(encoding='utf-8').splitlines(keepends=True)
        except OSError as e:
            raise ArtifactError(f"Cannot read checkpoint {self.path}: {e}")
        if not lines or lines[0] != self.header:
            raise ConfigError(f"Checkpoint {self.path} belongs to a different run")
        self._records = [CheckpointRecord.from_line(line) for line in lines[1:] if line.strip()]
        logger.info(f"Loaded {len(self._records)} checkpoint records from {self.path}")

    def records(self) -> List[CheckpointRecord]:
        return list(self._records)

    def append(self, N: int, lambda_value: str, det_evaluations: int, precision: int) -> CheckpointRecord:
        record = CheckpointRecord(N, lambda_value, det_evaluations, precision)
        try:
            with open(self.path, 'a', encoding='utf-8') as handle:
                handle.write(record.to_line())
                handle.flush()
                os.fsync(handle.fileno())
        except OSError as e:
            raise ArtifactError(f"Cannot append to checkpoint {self.path}: {e}")
        self._records.append(record)
        return record
