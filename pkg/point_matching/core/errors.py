"""
Point Matching Errors

Exception hierarchy for the point-matching library. Every error carries
the process exit code the management commands report for it.
"""


class PointMatchingError(Exception):
    """Base exception for all point-matching failures."""
    exit_code = 1


class ConfigError(PointMatchingError):
    """Invalid run configuration or incompatible parameters."""
    exit_code = 1


class DimensionError(ConfigError):
    """Vector or matrix of the wrong size."""
    pass


class DomainError(ConfigError):
    """Argument outside the real domain of a function."""
    pass


class GeometryError(ConfigError):
    """Degenerate polygon, edge, or point placement."""
    pass


class ConvergenceError(PointMatchingError):
    """Iteration or series failed to converge within its cap."""
    exit_code = 2


class NoAlternationError(ConvergenceError):
    """Eigenvalue estimates never alternated over the N schedule."""
    pass


class LostRootError(ConvergenceError):
    """Tracked root left its window between two N values."""
    pass


class RankDeficiencyError(ConvergenceError):
    """More than one near-zero pivot at a converged eigenvalue."""
    pass


class DegenerateRowError(ConvergenceError):
    """Matrix row vanished identically (trivially satisfied point)."""
    pass


class PrecisionError(PointMatchingError):
    """Requested precision is unsupported or exceeds the working precision."""
    exit_code = 3


class NotInCatalogError(PointMatchingError):
    """Shape, class and boundary kind combination is not cataloged."""
    exit_code = 4


class ArtifactError(PointMatchingError):
    """Result, checkpoint or grid file could not be read or written."""
    exit_code = 5
