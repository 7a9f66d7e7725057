"""
Point Matching Django App Configuration
"""
from django.apps import AppConfig


class PointMatchingConfig(AppConfig):
    name = 'point_matching'
    verbose_name = 'Point Matching Eigenvalues'
