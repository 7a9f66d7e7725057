"""
Django settings for the eigenlab project.

The project has no web front end: it hosts the point_matching app, its
management commands and its tests.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-eigenlab-local-only')

DEBUG = os.environ.get('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'point_matching',
]

# Plain-text reports only; autoescaping would mangle primes and angle brackets
TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.jinja2.Jinja2',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'environment': 'eigenlab.jinja2.environment',
            'autoescape': False,
            'keep_trailing_newline': True,
        },
    },
]

# No results database
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Logging
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'point_matching': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}


# Point-matching defaults (command flags and config files override these)
POINT_MATCHING = {
    'guard_digits': int(os.environ.get('POINT_MATCHING_GUARD_DIGITS', '10')),
    'term_cap_factor': int(os.environ.get('POINT_MATCHING_TERM_CAP_FACTOR', '100')),
    'digits': int(os.environ.get('POINT_MATCHING_DEFAULT_DIGITS', '30')),
    'threads': int(os.environ.get('POINT_MATCHING_THREADS', '1')),
    'gamma_algorithm': os.environ.get('POINT_MATCHING_GAMMA_ALGORITHM', 'library'),
    'checkpoint_dir': os.environ.get('POINT_MATCHING_CHECKPOINT_DIR') or None,
    'output_dir': os.environ.get('POINT_MATCHING_OUTPUT_DIR') or None,
}
