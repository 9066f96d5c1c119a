"""
Django settings for entity_annotator_project project.
"""

from pathlib import Path
import os

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / '.env')

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('ENTITY_ANNOTATOR_SECRET_KEY', 'django-insecure-entity-annotator-local-key')

DEBUG = os.environ.get('ENTITY_ANNOTATOR_DEBUG', 'false').lower() in ('1', 'true', 'yes')

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',
    'rest_framework',
    'entities',
]

# Database - only the test runner and system checks touch it
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

# Internationalization
LANGUAGE_CODE = 'fr-fr'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# REST Framework settings
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'UNICODE_JSON': True,
    'COMPACT_JSON': True,
}

# Bundled linguistic resources
RESOURCES_DIR = BASE_DIR / 'entities' / 'resources'

ENTITY_ANNOTATOR = {
    'HIERARCHY': os.environ.get('ENTITY_ANNOTATOR_HIERARCHY', str(RESOURCES_DIR / 'hierarchy.txt')),
    'GAZETTEER': os.environ.get('ENTITY_ANNOTATOR_GAZETTEER', str(RESOURCES_DIR / 'gazetteer.tsv')),
    'MARKERS': os.environ.get('ENTITY_ANNOTATOR_MARKERS', str(RESOURCES_DIR / 'markers.tsv')),
    'TRIGGERS': os.environ.get('ENTITY_ANNOTATOR_TRIGGERS', str(RESOURCES_DIR / 'triggers.tsv')),
    'TEMPLATES': os.environ.get('ENTITY_ANNOTATOR_TEMPLATES', str(RESOURCES_DIR / 'templates.txt')),
    'HEADS': os.environ.get('ENTITY_ANNOTATOR_HEADS', str(RESOURCES_DIR / 'heads.tsv')),
    # Optional general-language word list; empty means capitalization alone gates markers
    'DICTIONARY': os.environ.get('ENTITY_ANNOTATOR_DICTIONARY', ''),
    'CASE_POLICY': os.environ.get('ENTITY_ANNOTATOR_CASE_POLICY', 'exact'),
    'WORKERS': int(os.environ.get('ENTITY_ANNOTATOR_WORKERS', '1')),
}

# Logging goes to stderr so the record stream on stdout stays clean
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'entities': {
            'handlers': ['console'],
            'level': os.environ.get('ENTITY_ANNOTATOR_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
