"""
Point-Matching Engine

Geometry, Fourier-Bessel expansions, matrix assembly, determinant root
solving, the bound driver, the shapes catalog and eigenfunction tools.
"""
from point_matching.engine.assembly import PointMatchMatrix, assemble
from point_matching.engine.catalog import BoundaryKind, ShapeClassDescriptor, descriptor, list_catalog
from point_matching.engine.driver import BoundDriver, bound_driver, seed_bracket
from point_matching.engine.eigenfunction import (
    Eigenfunction,
    boundary_residual,
    coefficient_pattern_report,
    coefficients,
    grid_export,
)
from point_matching.engine.geometry import CanonicalPolygon, canonicalize
from point_matching.engine.solver import (
    DeterminantFunction,
    asymptotic_lambda1,
    bracket_roots,
    det_sign,
    refine_root,
    working_precision,
)

__all__ = [
    'PointMatchMatrix',
    'assemble',
    'BoundaryKind',
    'ShapeClassDescriptor',
    'descriptor',
    'list_catalog',
    'BoundDriver',
    'bound_driver',
    'seed_bracket',
    'Eigenfunction',
    'boundary_residual',
    'coefficient_pattern_report',
    'coefficients',
    'grid_export',
    'CanonicalPolygon',
    'canonicalize',
    'DeterminantFunction',
    'asymptotic_lambda1',
    'bracket_roots',
    'det_sign',
    'refine_root',
    'working_precision',
]
