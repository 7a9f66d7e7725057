"""
Django management command to list the shapes catalog.

Usage:
    python manage.py catalog
    python manage.py catalog --shape polygon7
"""
from point_matching.core.precision import PrecisionContext
from point_matching.engine.catalog import descriptor, list_catalog, shape_for
from point_matching.management.base import PointMatchingCommand
from point_matching.services.reports import catalog_report

LISTING_DIGITS = 30


class Command(PointMatchingCommand):
    help = 'Lists every cataloged (shape, class, boundary kind) with its expansion data'

    def run(self, config, **options):
        ctx = PrecisionContext(LISTING_DIGITS)
        if config.shape:
            shape = shape_for(config.shape, scale=config.scale or 'unit_edge')
            entries = [(shape.name, class_id, kind.value) for class_id, kind in shape.classes()]
        else:
            entries = list_catalog()
        rows = [
            descriptor(shape, class_id, bc, ctx, scale=config.scale or 'unit_edge').summary()
            for shape, class_id, bc in entries
        ]
        self.stdout.write(catalog_report(rows), ending='')
