"""
Django settings for qjk_project project.
"""

import os
from pathlib import Path
from decouple import config
from django.core.exceptions import ImproperlyConfigured

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='qjk-local-only-not-a-service')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition. No django.contrib apps: there are no models
THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'qarith',
    'rmatrix',
    'repns',
    'braids',
    'evaluator',
    'volume',
    'cli',
]

INSTALLED_APPS = THIRD_PARTY_APPS + LOCAL_APPS

# No persistence: every result is recomputed from the knot table
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework configuration (serializers and the JSON renderer only)
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'COMPACT_JSON': True,
    'STRICT_JSON': True,
    'UNICODE_JSON': False,
}

# Knot data
QJK_KNOT_TABLE = config('QJK_KNOT_TABLE', default=str(BASE_DIR / 'braids' / 'data' / 'knot_table.json'))
QJK_CONSTANTS = config('QJK_CONSTANTS', default=str(BASE_DIR / 'braids' / 'data' / 'constants.json'))

# Numerics
QJK_PRECISION = config('QJK_PRECISION', default='double')
QJK_TOLERANCE = config('QJK_TOLERANCE', default=1e-9, cast=float)
QJK_EXTENDED_ABOVE_N = config('QJK_EXTENDED_ABOVE_N', default=20, cast=int)
QJK_SPARSE_DROP = config('QJK_SPARSE_DROP', default=1e-14, cast=float)

# Evaluation
QJK_THREADS = config('QJK_THREADS', default=1, cast=int)
QJK_BATCH_SIZE = config('QJK_BATCH_SIZE', default=512, cast=int)
QJK_DENSE_MAX_ELEMENTS = config('QJK_DENSE_MAX_ELEMENTS', default=4194304, cast=int)
QJK_CROSS_CHECK_MAX_N = config('QJK_CROSS_CHECK_MAX_N', default=6, cast=int)

# Test suite
QJK_RUN_SLOW = config('QJK_RUN_SLOW', default=False, cast=bool)

if QJK_PRECISION not in ('double', 'extended'):
    raise ImproperlyConfigured(f"QJK_PRECISION must be 'double' or 'extended', got {QJK_PRECISION!r}")
if QJK_TOLERANCE <= 0:
    raise ImproperlyConfigured('QJK_TOLERANCE must be positive')
if QJK_THREADS < 1 or QJK_BATCH_SIZE < 1:
    raise ImproperlyConfigured('QJK_THREADS and QJK_BATCH_SIZE must be at least 1')

LOG_LEVEL = config('LOG_LEVEL', default='INFO')

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': LOG_LEVEL,
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'qjk.log',
            'formatter': 'simple',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'root': {
        'handlers': ['console', 'file'],
        'level': LOG_LEVEL,
    },
}

# Create logs directory if it doesn't exist
os.makedirs(BASE_DIR / 'logs', exist_ok=True)
