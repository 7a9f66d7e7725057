"""
Services module for point matching runs.
"""
from point_matching.services.artifacts import write_text_atomic
from point_matching.services.checkpoint import CheckpointStore
from point_matching.services.run_config import RunConfig, parse_config_text

__all__ = [
    'write_text_atomic',
    'CheckpointStore',
    'RunConfig',
    'parse_config_text',
]
