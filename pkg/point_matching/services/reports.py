"""
Text Reports

Plain-text tables rendered from the app's Jinja2 templates.
"""
import logging
from typing import Any, Dict, List, Sequence

from django.template.loader import render_to_string

logger = logging.getLogger(__name__)


def render(template: str, context: Dict[str, Any]) -> str:
    return render_to_string(f'point_matching/{template}', context)


def catalog_report(rows: Sequence[Dict[str, Any]]) -> str:
    """Catalog listing, one line per (shape, class, boundary kind)."""
    return render('catalog.txt', {'rows': list(rows), 'count': len(rows)})


def fhm_report(rows: Sequence[Dict[str, Any]], distribution: str, bound: str = None) -> str:
    """λ^[N] per row, checked against the reference values, beside the published ones."""
    passed = sum(1 for row in rows if row.get('status') == 'pass')
    return render('fhm_table.txt', {
        'rows': list(rows),
        'distribution': distribution,
        'passed': passed,
        'bound': bound,
    })


def pattern_report(report, labels: List[str]) -> str:
    return render('pattern_report.txt', {
        'classifications': report.classifications,
        'groups': report.groups,
        'labels': labels,
    })


def sweep_report(label: str, N: int, rows: Sequence[Dict[str, Any]]) -> str:
    return render('sweep.txt', {'label': label, 'N': N, 'rows': list(rows)})


def bound_report(record: Dict[str, Any], history: Sequence[Sequence[Any]]) -> str:
    return render('bound.txt', {'record': record, 'history': list(history)})
