"""
Jinja2 environment configuration for Django.
"""
from jinja2 import Environment, StrictUndefined


def environment(**options):
    """
    Create the Jinja2 environment for the plain-text reports.

    Missing template variables raise instead of rendering empty.
    """
    options['undefined'] = StrictUndefined
    return Environment(**options)
